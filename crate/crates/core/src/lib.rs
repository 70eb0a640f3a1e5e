//! Exact computation of the mod-2 crossed homomorphism `Θ_φ` on pure
//! automorphisms of the relative homology of a framed surface.

pub mod bruteforce;
pub mod error;
pub mod framing;
pub mod kernel;
pub mod lattice;
pub mod matrix;
pub mod mod2;
pub mod moves;
pub mod paut;
pub mod sample;
pub mod theta;
pub mod word;

pub use error::{Error, Result};
pub use framing::{arf, parity_p, q_vector, spin_form, Framing, QForm, QVector};
pub use kernel::{kernel_test, lift_transvection, structure_report, StructureReport};
pub use lattice::{AbsVec, PunctVec, RelVec, SurfaceSpec, ZeroChain};
pub use matrix::IntMatrix;
pub use mod2::{CohomClass, Mod2Matrix};
pub use moves::{apply_move, match_framings, BasisElem, Move};
pub use paut::{compose, decompose, factor_sp, invert, PAutElem, TransvectionFactor};
pub use theta::{q_hat, theta, v_kappa_star};
pub use word::{act_framing, act_rel, delta_word, word_to_paut, Generator, Word};
