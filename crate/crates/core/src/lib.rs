pub mod admissibility;
pub mod diagram;
pub mod error;
pub mod frontend;
pub mod gkdim;
pub mod linalg;
pub mod pbw;
pub mod realization;
pub mod scalar;
pub mod space;
pub mod symmetrizer;
pub mod text;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    struct Introduction;
    #[doc = include_str!("../../../book/src/scalars.md")]
    struct Scalars;
    #[doc = include_str!("../../../book/src/spaces.md")]
    struct Spaces;
    #[doc = include_str!("../../../book/src/admissibility.md")]
    struct Admissibility;
    #[doc = include_str!("../../../book/src/gkdim.md")]
    struct Gkdim;
    #[doc = include_str!("../../../book/src/symmetrizer.md")]
    struct Symmetrizer;
    #[doc = include_str!("../../../book/src/pbw.md")]
    struct Pbw;
    #[doc = include_str!("../../../book/src/realization.md")]
    struct Realization;
    #[doc = include_str!("../../../book/src/cli.md")]
    struct Cli;
}
