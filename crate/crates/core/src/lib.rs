//! Groups of automorphisms of regular rooted trees given by wreath recursion:
//! elements as words over automaton states, exact decision procedures,
//! orbit and stabilizer computations, and a certificate checker.

pub mod ball;
pub mod certify;
pub mod corpus;
pub mod decide;
pub mod dot;
pub mod element;
pub mod error;
pub mod group;
pub mod groupfile;
pub mod perm;
pub mod subgroups;
pub mod word;

pub use decide::{canonical_key, equals, is_trivial, CanonicalKey, OrderResult};
pub use element::{Element, Letter, Vertex, WreathCoords};
pub use error::{Error, Result};
pub use group::{make_group, Alphabet, GroupDef, StateSpec};
pub use groupfile::{parse_group_file, serialize_group};
pub use perm::Perm;
pub use subgroups::GenSet;
pub use word::{parse_expr, parse_word, Expr};
