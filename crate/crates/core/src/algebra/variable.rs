use std::fmt;

/// A polynomial indeterminate.
///
/// The derived ordering is the global variable order used for canonical term
/// order: time variables by index, then `h` symbols by `(k, i, j)`, then the
/// coefficient variables `pi`, then auxiliaries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    /// KP time `t_n`; `t_1 = x`, `t_2 = y`, `t_3 = t`.
    Time(u32),
    /// The symbol `h^{i,j}_k`, 1-based `i`, `j`.
    H { k: u32, i: u32, j: u32 },
    /// Coefficient variable, indexed by position in an enumeration of sequences.
    Pi(u32),
    Aux(u32),
}

impl Var {
    pub const X: Var = Var::Time(1);
    pub const Y: Var = Var::Time(2);
    pub const T: Var = Var::Time(3);

    pub fn h(i: u32, j: u32, k: u32) -> Var {
        Var::H { k, i, j }
    }

    /// Tag and indices used by the JSON form, e.g. `("h", [i, j, k])`.
    pub fn parts(&self) -> (&'static str, Vec<i64>) {
        match *self {
            Var::Time(n) => ("t", vec![n as i64]),
            Var::H { k, i, j } => ("h", vec![i as i64, j as i64, k as i64]),
            Var::Pi(n) => ("pi", vec![n as i64]),
            Var::Aux(n) => ("aux", vec![n as i64]),
        }
    }

    pub fn from_parts(tag: &str, idx: &[i64]) -> Option<Var> {
        let nonneg = |v: i64| u32::try_from(v).ok();
        match (tag, idx) {
            ("t", [n]) if *n >= 1 => Some(Var::Time(nonneg(*n)?)),
            ("h", [i, j, k]) if *i >= 1 && *j >= 1 => {
                Some(Var::h(nonneg(*i)?, nonneg(*j)?, nonneg(*k)?))
            }
            ("pi", [n]) => Some(Var::Pi(nonneg(*n)?)),
            ("aux", [n]) => Some(Var::Aux(nonneg(*n)?)),
            _ => None,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Var::Time(1) => write!(f, "x"),
            Var::Time(2) => write!(f, "y"),
            Var::Time(3) => write!(f, "t"),
            Var::Time(n) => write!(f, "t{n}"),
            Var::H { k, i, j } => write!(f, "h[{i},{j},{k}]"),
            Var::Pi(n) => write!(f, "pi{n}"),
            Var::Aux(n) => write!(f, "a{n}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn global_order() {
        let mut v = vec![Var::Pi(0), Var::h(2, 1, 0), Var::h(1, 1, 1), Var::T, Var::X];
        v.sort();
        assert_eq!(v, vec![Var::X, Var::T, Var::h(2, 1, 0), Var::h(1, 1, 1), Var::Pi(0)]);
    }

    #[test]
    fn parts_round_trip() {
        for v in [Var::X, Var::Time(7), Var::h(2, 1, 3), Var::Pi(5), Var::Aux(0)] {
            let (tag, idx) = v.parts();
            assert_eq!(Var::from_parts(tag, &idx), Some(v));
        }
        assert_eq!(Var::from_parts("h", &[0, 1, 1]), None);
        assert_eq!(Var::from_parts("q", &[1]), None);
    }
}
