//! The `.bvs` input language, JSON reports and DOT rendering.
//!
//! ```text
//! space ex58 {
//!   block b plus
//!   tail t from b shape a_inf_chain ghost = 1
//! }
//! ```
//!
//! Items are `block ID plus|minus`, `point ID q = S`,
//! `edge R S (qtilde = S | q12 = S q21 = S) [a12 = A] [a21 = A] [ghost = G]`,
//! `tail ID from (ID|fresh) shape KIND [q = S] [ghost = G] [link = S] [p = [..; c]]`
//! and `family ID pattern { … } (attach B [at P] ghost = G)* count = (N|omega)`.
//! An edge with a `ghost` and no `q` values is a weak block–point edge.
//!
//! ```
//! use nichols_gk::frontend::{parse, parse_spaces};
//!
//! let text = "space s {\n  block b plus\n  point p q = -1\n  edge b p ghost = 1\n}\n";
//! let tree = parse(text).unwrap();
//! assert_eq!(tree.to_string(), text);
//! assert_eq!(parse_spaces(text).unwrap()[0].pairs.len(), 1);
//! ```

mod dot;
mod dsl;
mod json;

pub use dot::{dynkin_to_dot, flourished_to_dot};
pub use dsl::{
    parse, parse_spaces, print_spec, AttachDecl, EdgeDecl, EdgeQ, FamilyDecl, Item, SourceSpec, SpaceDecl, Spanned,
};
pub use json::{report, reports};
