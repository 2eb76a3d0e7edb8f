pub mod atom;
pub mod error;
pub mod gl;
pub mod half;
pub mod mustar;
pub mod parse;
pub mod rulebase;
pub mod segment;
pub mod tensor;
pub mod verdict;
pub mod verify;
pub mod words;

pub use error::{Error, Result};
pub use half::HalfInt;
pub use segment::Segment;

/// The book chapters, compiled so their snippets run as doctests.
#[cfg(doctest)]
pub mod guide {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub struct Introduction;
    #[doc = include_str!("../../../book/src/segments.md")]
    pub struct Segments;
    #[doc = include_str!("../../../book/src/gl-ring.md")]
    pub struct GlRing;
    #[doc = include_str!("../../../book/src/atoms.md")]
    pub struct Atoms;
    #[doc = include_str!("../../../book/src/structure-formula.md")]
    pub struct StructureFormula;
    #[doc = include_str!("../../../book/src/rulebase.md")]
    pub struct Rulebase;
    #[doc = include_str!("../../../book/src/verification.md")]
    pub struct Verification;
    #[doc = include_str!("../../../book/src/cli.md")]
    pub struct Cli;
}
