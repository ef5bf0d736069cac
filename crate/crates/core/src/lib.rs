//! Twisted permutation codes and their uncovering-by-bases decoder.

pub mod channel;
pub mod decoder;
pub mod error;
pub mod fixtures;
pub mod gkp;
pub mod group;
pub mod io;
pub mod matching;
pub mod morphism;
pub mod perm;
pub mod report;
pub mod saxl;
pub mod subsets;
pub mod twisted;
pub mod ubb;

pub use channel::{inject_errors, simulate, ChannelSpec, Mode, SimStats};
pub use decoder::{Action, Attempt, DecodeResult, DecoderState, Outcome};
pub use error::{Error, Result};
pub use gkp::{build_gkp, gkp_saxl_connected, gkp_twisted_code, gkp_ubb, GkpGroup, MatrixModP};
pub use group::{Base, BaseIndex, Distance, ElementId, ElementTable, PermutationGroup};
pub use perm::{hamming_distance, Permutation, Word};
pub use report::{report_tables, TableReport, TableRow};
pub use saxl::{matching_ubb, saxl_graph, SaxlGraph};
pub use twisted::{Codeword, ComponentSpec, CorrectionParams, IsomorphismTable, PointBijection, TwistedCode};
pub use ubb::{relabel_search, ubb_from_cover, CoveringDesign, Strength, Ubb};
