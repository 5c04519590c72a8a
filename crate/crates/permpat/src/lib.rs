//! Pattern-closed permutation groups: the `Pat` and `Comp` operators, a
//! classifier predicting `Comp` of a group at higher degrees, and a verifier
//! that checks those predictions by brute force.

pub mod classifier;
pub mod descriptor;
pub mod error;
pub mod galois;
pub mod group;
pub mod partition;
pub mod perm;
pub mod verifier;

pub use descriptor::{make_group, GroupDescriptor};
pub use error::{Error, PartitionError, PermError};
pub use group::{enumerate_subgroups, Limits, PermGroup};
pub use partition::Partition;
pub use perm::{Basic, JumpPair, Notation, Parity, Permutation, SumKind, Symmetry};
pub use galois::{comp_level_sequence, comp_set, gcomp, gpat, pat_set, PermSet, Strategy};
pub use classifier::{classify_kind, predict_eventual, predict_level, predict_levels, predict_next, ClassKind, EventualFamily, FamilyKind, GroupForm, Next, Prediction};
pub use verifier::{eventual_onset, verify_catalog, verify_laws, verify_laws_with, verify_onset, verify_prediction, ComposeFn, Onset, Report, Status};
