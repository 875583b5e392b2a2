//! Near-coincidences between e and π: expressions, certified evaluation, the
//! relation registry and the derivations that connect its entries.

pub mod cfrac;
pub mod derive;
pub mod eval;
pub mod expr;
pub mod registry;
pub mod scan;
pub mod verify;

pub use cfrac::{cfrac, convergents, QUOTED_EXP_PI};
pub use derive::{binomial_linearize, binomial_remainder_bound, solve_linear_2x2, solve_pi_quadratic};
pub use eval::{eval_expr, Evaluation};
pub use expr::{parse, Expr};
pub use registry::{registry, relation, Relation, RelationKind};
pub use scan::{linear_combo_scan, ScanRow};
pub use verify::{digits_of_agreement, verify, verify_all, VerificationReport};
