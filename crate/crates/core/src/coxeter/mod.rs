//! Right-angled Coxeter groups: word reduction, normal forms, the integral Tits
//! representation, balls and separating congruence moduli.

mod ball;
mod mirrors;
mod racg;
mod tits;

pub use ball::{
    ball, ball_size_or_guard, separating_modulus, verify_separating, SeparatingRecord,
    SeparationEntry, BALL_GUARD,
};
pub use mirrors::{bundled_h0_pattern, h0_mirror_pattern, MirrorKind, MirrorPattern, H0_PATTERN_K4};
pub use racg::{
    coxeter_word_of_path, extends_normal_form, lemma_bounds, normal_form, racg_from_mirrors,
    reduce, unreduced_witness, BoundRule, CoxWord, LemmaBound, Racg, RacgJson, Witness,
};
pub use tits::{
    bilinear, faithfulness_sweep, generator_matrix, tits_matrix, FaithfulnessReport, TitsMatrix,
};
