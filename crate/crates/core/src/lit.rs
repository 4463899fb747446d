//! Propositional variables, literals and three-valued assignments.

use std::fmt;
use std::ops::Not;

/// A propositional variable. Indices are dense and 0-based; external
/// formats use 1-based numbering (see [`Var::from_dimacs`]).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(pub u32);

impl Var {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// Converts a 1-based external index.
    pub fn from_dimacs(v: u32) -> Var {
        assert!(v > 0, "DIMACS variables are 1-based");
        Var(v - 1)
    }

    pub fn to_dimacs(self) -> u32 {
        self.0 + 1
    }

    #[inline]
    pub fn pos(self) -> Lit {
        Lit::new(self, true)
    }

    #[inline]
    pub fn neg(self) -> Lit {
        Lit::new(self, false)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0 + 1)
    }
}

/// A signed variable, packed as `2 * var + (negated as u32)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lit(u32);

impl Lit {
    #[inline]
    pub fn new(var: Var, positive: bool) -> Lit {
        Lit(var.0 << 1 | (!positive) as u32)
    }

    #[inline]
    pub fn var(self) -> Var {
        Var(self.0 >> 1)
    }

    #[inline]
    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    #[inline]
    pub fn code(self) -> usize {
        self.0 as usize
    }

    pub fn from_dimacs(l: i32) -> Lit {
        assert!(l != 0, "0 is not a literal");
        Lit::new(Var::from_dimacs(l.unsigned_abs()), l > 0)
    }

    pub fn to_dimacs(self) -> i32 {
        let v = self.var().to_dimacs() as i32;
        if self.is_positive() {
            v
        } else {
            -v
        }
    }
}

impl Not for Lit {
    type Output = Lit;
    #[inline]
    fn not(self) -> Lit {
        Lit(self.0 ^ 1)
    }
}

impl fmt::Debug for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

/// Three-valued truth value of a variable or literal under a partial assignment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum LBool {
    True,
    False,
    #[default]
    Undef,
}

impl LBool {
    #[inline]
    pub fn from_bool(b: bool) -> LBool {
        if b {
            LBool::True
        } else {
            LBool::False
        }
    }

    #[inline]
    pub fn is_true(self) -> bool {
        self == LBool::True
    }

    #[inline]
    pub fn is_false(self) -> bool {
        self == LBool::False
    }

    #[inline]
    pub fn is_undef(self) -> bool {
        self == LBool::Undef
    }

    /// Value of a literal whose variable has this value.
    #[inline]
    pub fn under_sign(self, positive: bool) -> LBool {
        match (self, positive) {
            (LBool::Undef, _) => LBool::Undef,
            (v, true) => v,
            (LBool::True, false) => LBool::False,
            (LBool::False, false) => LBool::True,
        }
    }

    pub fn to_option(self) -> Option<bool> {
        match self {
            LBool::True => Some(true),
            LBool::False => Some(false),
            LBool::Undef => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn dimacs_conversion() {
        let l = Lit::from_dimacs(-3);
        assert_eq!(l.var(), Var(2));
        assert!(!l.is_positive());
        assert_eq!(l.to_dimacs(), -3);
        assert_eq!((!l).to_dimacs(), 3);
    }

    proptest! {
        #[test]
        fn negation_is_involution(v in 0u32..1_000_000, s: bool) {
            let l = Lit::new(Var(v), s);
            prop_assert_eq!(!!l, l);
            prop_assert_ne!(!l, l);
            prop_assert_eq!((!l).var(), l.var());
            prop_assert_eq!(Lit::from_dimacs(l.to_dimacs()), l);
        }
    }
}
