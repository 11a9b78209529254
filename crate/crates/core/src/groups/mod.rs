//! The shipped groups: BS(1,2), the Baumslag–Gersten group and the
//! metabelian groups `G_p`, with independent algebraic oracles.

pub mod affine;
pub mod bg;
pub mod bs12;
pub mod gp;
pub mod graph_phi;
pub mod module;
pub mod ntilde;

pub use affine::{oracle_bs12, AffineElement, Dyadic};
pub use bg::{bg_data, bg_structure, oracle_bg};
pub use bs12::bs12_structure;
pub use gp::{gp_structure, measure_of, GpError, GpMeasure};
pub use graph_phi::graph_phi_fsa;
pub use module::{oracle_gp, ModuleElement};
pub use ntilde::ntilde_fsa;
