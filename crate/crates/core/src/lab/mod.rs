//! Concrete checks of the convergent lemmas and the sign-change scan for `psi_alpha - psi_beta`.

mod guard;
mod interleave;
mod lemmas;
mod signs;

pub use guard::{pair_guard, GuardStatus, PairSession};
pub use interleave::{interleave_report, InterleaveReport, Mark};
pub use lemmas::{
    corollary_check, corollary_check_with, lemma1_check, lemma1_check_with, lemma2_check,
    lemma2_check_with, pm_identity_check, pm_identity_check_with, LabConfig, LemmaEntry, LemmaKind,
    LemmaReport, Outcome,
};
pub use signs::{
    sign_changes, sign_changes_with, PsiDifference, Sign, SignChangeEvent, SignChangeReport,
    ZeroInterval,
};
