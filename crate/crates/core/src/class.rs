//! Target classes and membership.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::depgraph::forbidden_cycle;
use crate::program::{core, Program};

/// Tractable target classes. Every class is read with the `*` operator:
/// membership is decided on the program after removing tautological rules
/// and constraints (see [`Closure`] for the plain reading).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum TargetClass {
    HornStar,
    CAcycStar,
    BCAcycStar,
    DCAcycStar,
    DC2AcycStar,
    StratStar,
}

impl TargetClass {
    pub const ALL: [TargetClass; 6] = [
        TargetClass::HornStar,
        TargetClass::CAcycStar,
        TargetClass::BCAcycStar,
        TargetClass::DCAcycStar,
        TargetClass::DC2AcycStar,
        TargetClass::StratStar,
    ];

    pub const ACYCLIC: [TargetClass; 5] = [
        TargetClass::CAcycStar,
        TargetClass::BCAcycStar,
        TargetClass::DCAcycStar,
        TargetClass::DC2AcycStar,
        TargetClass::StratStar,
    ];

    pub fn is_acyclic(self) -> bool {
        self != TargetClass::HornStar
    }

    /// Short command-line name.
    pub fn cli_name(self) -> &'static str {
        match self {
            TargetClass::HornStar => "horn",
            TargetClass::CAcycStar => "c-acyc",
            TargetClass::BCAcycStar => "bc-acyc",
            TargetClass::DCAcycStar => "dc-acyc",
            TargetClass::DC2AcycStar => "dc2-acyc",
            TargetClass::StratStar => "strat",
        }
    }
}

impl fmt::Display for TargetClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TargetClass::HornStar => "Horn*",
            TargetClass::CAcycStar => "C-Acyc*",
            TargetClass::BCAcycStar => "BC-Acyc*",
            TargetClass::DCAcycStar => "DC-Acyc*",
            TargetClass::DC2AcycStar => "DC2-Acyc*",
            TargetClass::StratStar => "Strat*",
        };
        f.write_str(s)
    }
}

impl FromStr for TargetClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TargetClass::ALL
            .into_iter()
            .find(|c| c.cli_name() == s)
            .ok_or_else(|| format!("unknown target class `{s}`"))
    }
}

/// How a class treats tautological rules and constraints.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Closure {
    /// Drop tautological rules and constraints before testing (`C*`).
    #[default]
    Star,
    /// Test the program as is (`C`). Constraints are not normal, so they
    /// exclude a program from every acyclicity class.
    Plain,
}

/// Membership in `c` under the `*` reading.
pub fn in_target_class(p: &Program, c: TargetClass) -> bool {
    in_class(p, c, Closure::Star)
}

pub fn in_class(p: &Program, c: TargetClass, closure: Closure) -> bool {
    let owned;
    let q = match closure {
        Closure::Star => {
            owned = core(p);
            &owned
        }
        Closure::Plain => p,
    };
    match c {
        TargetClass::HornStar => q.is_horn(),
        _ => q.is_normal() && forbidden_cycle(q, c).is_none(),
    }
}
