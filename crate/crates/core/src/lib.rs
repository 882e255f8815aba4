//! Congruences of monoids through word graphs.
//!
//! * [`wordgraph`]: word graphs, standard forms and compatibility with a
//!   presentation;
//! * [`lowindex`]: enumeration of the right (or left) congruences with at
//!   most `n` classes of a finitely presented monoid;
//! * [`latticeops`]: joins and meets of congruences given by word graphs,
//!   and lattices generated by joins;
//! * [`finite`]: finite monoids, their principal congruences and congruence
//!   lattices;
//! * [`relgreens`]: relative Green's classes of `M x M`, used to cut down
//!   the pairs generating principal congruences.

pub mod dsu;
pub mod error;
pub mod finite;
pub mod latticeops;
pub mod lowindex;
pub mod presentation;
pub mod registry;
pub mod relgreens;
pub mod wordgraph;

pub use error::{Error, Result};
pub use finite::{CongruenceKind, CongruencePartition, FiniteMonoid};
pub use latticeops::{join_word_graphs, meet_word_graphs, CongruenceLattice};
pub use lowindex::{SearchConfig, Side};
pub use presentation::{Kind, Letter, Presentation, Word};
pub use wordgraph::WordGraph;
