//! Rational verification of multiplayer graph games with Muller objectives,
//! under Nash equilibrium and under common knowledge of rationality, for
//! positional strategies.

pub mod arena;
pub mod ckr;
pub mod epistemic;
pub mod error;
pub mod exec;
pub mod formula;
pub mod objectives;
pub mod reductions;
pub mod strategy;
pub mod verify;

pub use arena::{Arena, ArenaBuilder, Lasso, PlayerId, VertexId};
pub use ckr::{
    idip, in_t, in_t_p, is_inferior, CkrMembership, IdipTrace, SearchMode, SearchOptions,
};
pub use epistemic::{EpistemicModel, Event, KripkeFrame};
pub use error::{Error, Result};
pub use exec::Config;
pub use formula::{parse_formula, Formula};
pub use objectives::{ObjectiveFormula, ObjectiveProfile};
pub use reductions::{parse_qbf, qbf_eval, QbfInstance};
pub use strategy::{PositionalProfile, PositionalStrategy, ProfileSpace};
pub use verify::{sver, vp_nash_pos, vpckr_p_pos, vpckr_pos, Answer, Verdict};
