//! The fixed global symbol namespace.
//!
//! Every polynomial indeterminate is drawn from one static table, so two
//! polynomials always agree on variable order and no "ring mismatch" can occur
//! between symbolic values. The primed and double-primed `y` symbols carry the
//! second and third factors of the opposite unipotent group law; `t1`, `t2`
//! parametrize the diagonal torus and `lam` is the free parameter of the
//! negative root vector ansatz.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// Index into [`SYMBOL_NAMES`]. The index order is the variable order used by
/// the graded lexicographic term order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(u8);

pub const SYMBOL_NAMES: [&str; 30] = [
    "a", "b", "x01", "x10", "x11", "x21", "x31", "x32", "y01", "y10", "y11", "y21", "y31", "y32", "s", "t", "x",
    "y10'", "y11'", "y21'", "y31'", "y32'", "y10''", "y11''", "y21''", "y31''", "y32''", "t1", "t2", "lam",
];

macro_rules! symbols {
    ($($name:ident = $idx:expr),* $(,)?) => {
        $(pub const $name: Symbol = Symbol($idx);)*
    };
}

impl Symbol {
    symbols! {
        A = 0, B = 1, X01 = 2, X10 = 3, X11 = 4, X21 = 5, X31 = 6, X32 = 7,
        Y01 = 8, Y10 = 9, Y11 = 10, Y21 = 11, Y31 = 12, Y32 = 13,
        S = 14, T = 15, X = 16,
        Y10P = 17, Y11P = 18, Y21P = 19, Y31P = 20, Y32P = 21,
        Y10PP = 22, Y11PP = 23, Y21PP = 24, Y31PP = 25, Y32PP = 26,
        T1 = 27, T2 = 28, LAM = 29,
    }

    pub const COUNT: usize = SYMBOL_NAMES.len();

    /// Opposite unipotent coordinates in increasing root height.
    pub const NBAR: [Symbol; 5] = [Self::Y10, Self::Y11, Self::Y21, Self::Y31, Self::Y32];
    pub const NBAR_P: [Symbol; 5] = [Self::Y10P, Self::Y11P, Self::Y21P, Self::Y31P, Self::Y32P];
    pub const NBAR_PP: [Symbol; 5] = [Self::Y10PP, Self::Y11PP, Self::Y21PP, Self::Y31PP, Self::Y32PP];
    /// Unipotent radical coordinates `(x10, x11, x21, x31, x32)`.
    pub const N: [Symbol; 5] = [Self::X10, Self::X11, Self::X21, Self::X31, Self::X32];

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn from_index(idx: usize) -> Option<Symbol> {
        (idx < Self::COUNT).then_some(Symbol(idx as u8))
    }

    pub fn name(self) -> &'static str {
        SYMBOL_NAMES[self.index()]
    }

    pub fn all() -> impl Iterator<Item = Symbol> {
        (0..Self::COUNT).map(|i| Symbol(i as u8))
    }

    /// LaTeX rendering: `x21` becomes `x_{21}`, `y10'` becomes `y_{10}'`.
    pub fn latex(self) -> String {
        let name = self.name();
        let primes = name.chars().filter(|&c| c == '\'').count();
        let core = name.trim_end_matches('\'');
        let split = core.find(|c: char| c.is_ascii_digit());
        let mut out = match split {
            Some(i) => format!("{}_{{{}}}", &core[..i], &core[i..]),
            None if core == "lam" => "\\lambda".to_string(),
            None => core.to_string(),
        };
        out.extend(std::iter::repeat_n('\'', primes));
        out
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Symbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SYMBOL_NAMES
            .iter()
            .position(|&n| n == s)
            .map(|i| Symbol(i as u8))
            .ok_or_else(|| Error::UnknownSymbol(s.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in Symbol::all() {
            assert_eq!(s.name().parse::<Symbol>().unwrap(), s);
        }
    }

    #[test]
    fn unknown_symbol_rejected() {
        assert_eq!("x22".parse::<Symbol>(), Err(Error::UnknownSymbol("x22".into())));
    }

    #[test]
    fn latex_names() {
        assert_eq!(Symbol::X21.latex(), "x_{21}");
        assert_eq!(Symbol::Y10P.latex(), "y_{10}'");
        assert_eq!(Symbol::T.latex(), "t");
    }
}
