use std::fmt;
use std::ops::Not;

use serde::{Deserialize, Serialize};

pub type Var = u32;

/// Literal packed as `var << 1 | negated`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "i64", try_from = "i64")]
pub struct Lit(u32);

impl Lit {
    pub fn new(var: Var, negated: bool) -> Lit {
        Lit(var << 1 | negated as u32)
    }

    pub fn pos(var: Var) -> Lit {
        Lit::new(var, false)
    }

    pub fn neg(var: Var) -> Lit {
        Lit::new(var, true)
    }

    pub fn var(self) -> Var {
        self.0 >> 1
    }

    pub fn is_negated(self) -> bool {
        self.0 & 1 == 1
    }

    pub(crate) fn code(self) -> usize {
        self.0 as usize
    }

    /// 1-based signed DIMACS literal.
    pub fn to_dimacs(self) -> i64 {
        let v = self.var() as i64 + 1;
        if self.is_negated() {
            -v
        } else {
            v
        }
    }

    pub fn from_dimacs(d: i64) -> Option<Lit> {
        if d == 0 || d.unsigned_abs() > (u32::MAX >> 1) as u64 {
            return None;
        }
        Some(Lit::new(d.unsigned_abs() as u32 - 1, d < 0))
    }

    /// Truth value of the literal under a full assignment.
    pub fn eval(self, model: &[bool]) -> bool {
        model[self.var() as usize] != self.is_negated()
    }
}

impl Not for Lit {
    type Output = Lit;
    fn not(self) -> Lit {
        Lit(self.0 ^ 1)
    }
}

impl From<Lit> for i64 {
    fn from(l: Lit) -> i64 {
        l.to_dimacs()
    }
}

impl TryFrom<i64> for Lit {
    type Error = String;
    fn try_from(d: i64) -> Result<Lit, String> {
        Lit::from_dimacs(d).ok_or_else(|| format!("invalid literal {d}"))
    }
}

impl fmt::Debug for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}
