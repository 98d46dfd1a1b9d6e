//! Ground answer-set programs evaluated through small backdoors.
//!
//! A program is parsed from a plain text format, classified against six
//! tractable target classes, and solved by enumerating the truth assignment
//! reducts over a strong backdoor and filtering the resulting candidates.
//!
//! ```
//! use aspback::{answer_sets, parse_program};
//!
//! let p = parse_program(aspback::EX1).unwrap();
//! let x = p.table().resolve_names("r s").unwrap();
//! let report = answer_sets(&p, &x).unwrap();
//! assert_eq!(report.answer_sets.len(), 1);
//! ```

pub mod atoms;
pub mod class;
pub mod cli;
pub mod depgraph;
pub mod detect;
pub mod error;
pub mod eval;
pub mod gen;
pub mod horn;
pub mod oracle;
pub mod parse;
pub mod program;
pub mod reducts;
pub mod stats;

pub use atoms::{Atom, AtomSet, AtomTable};
pub use class::{in_class, in_target_class, Closure, TargetClass};
pub use detect::{find_backdoor, verify_backdoor, BackdoorKind, BackdoorQuery, BackdoorResult, Bound};
pub use error::{Error, Result};
pub use eval::{answer_sets, candidate_sets, check_answer_set, reason, Answer, EvalReport, Mode};
pub use parse::{parse_program, read_program, render_program};
pub use program::{core, rule_flags, Program, Rule, RuleFlags};

/// A six-rule program used throughout the documentation and tests.
pub const EX1: &str = "s :- w.  u :- s, q.  r :- w, s.  t :- not r.  q :- not s, u.  w :- not r, u.";
