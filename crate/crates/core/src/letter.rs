//! The alphabet `1 < 2 < ... < n-1 < {n, n̄} < n-1̄ < ... < 1̄` of type `D_n` and the
//! affine crystal `B^{1,1}` on it.

use std::cmp::Ordering;
use std::fmt;

use crate::crystal::{Crystal, FiniteCrystal};
use crate::error::{Error, Result};
use crate::weight::{CartanType, Weight};

/// A letter of the `D_n` alphabet. `rank` runs over `1..=2n` along the chain
/// `1, 2, ..., n, n̄, ..., 1̄`; the derived total order breaks the tie between
/// `n` and `n̄` arbitrarily, use [`Letter::compare`] for the actual partial order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    n: u8,
    rank: u8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LetterOrder {
    Less,
    Equal,
    Greater,
    Incomparable,
}

impl Letter {
    /// `v > 0` is the unbarred letter `v`, `v < 0` the barred letter `|v|`.
    pub fn new(n: usize, v: i32) -> Result<Letter> {
        let a = v.unsigned_abs() as usize;
        if v == 0 || a > n || n > 120 {
            return Err(Error::InvalidElement(format!("letter {v} for n = {n}")));
        }
        let rank = if v > 0 { a } else { 2 * n + 1 - a };
        Ok(Letter {
            n: n as u8,
            rank: rank as u8,
        })
    }

    /// Panicking constructor for letters known to be in range.
    pub fn of(n: usize, v: i32) -> Letter {
        Letter::new(n, v).expect("letter out of range")
    }

    pub fn n(self) -> usize {
        self.n as usize
    }

    /// Signed value: `i` or `-i` for `ī`.
    pub fn value(self) -> i32 {
        let n = self.n as i32;
        let r = self.rank as i32;
        if r <= n {
            r
        } else {
            -(2 * n + 1 - r)
        }
    }

    pub fn abs(self) -> usize {
        self.value().unsigned_abs() as usize
    }

    pub fn is_barred(self) -> bool {
        self.value() < 0
    }

    pub fn bar(self) -> Letter {
        Letter {
            n: self.n,
            rank: 2 * self.n + 1 - self.rank,
        }
    }

    pub fn is(self, v: i32) -> bool {
        self.value() == v
    }

    pub fn compare(self, other: Letter) -> LetterOrder {
        let n = self.n;
        if self.rank == other.rank {
            LetterOrder::Equal
        } else if (self.rank == n && other.rank == n + 1) || (self.rank == n + 1 && other.rank == n) {
            LetterOrder::Incomparable
        } else if self.rank < other.rank {
            LetterOrder::Less
        } else {
            LetterOrder::Greater
        }
    }

    pub fn lt(self, other: Letter) -> bool {
        self.compare(other) == LetterOrder::Less
    }

    pub fn le(self, other: Letter) -> bool {
        matches!(self.compare(other), LetterOrder::Less | LetterOrder::Equal)
    }

    pub fn gt(self, other: Letter) -> bool {
        self.compare(other) == LetterOrder::Greater
    }

    pub fn ge(self, other: Letter) -> bool {
        matches!(self.compare(other), LetterOrder::Greater | LetterOrder::Equal)
    }

    /// Position along the chain, `1..=2n`.
    pub fn rank(self) -> usize {
        self.rank as usize
    }

    pub fn from_rank(n: usize, rank: usize) -> Letter {
        assert!((1..=2 * n).contains(&rank));
        Letter {
            n: n as u8,
            rank: rank as u8,
        }
    }

    /// All `2n` letters in chain order.
    pub fn all(n: usize) -> Vec<Letter> {
        (1..=2 * n).map(|r| Letter::from_rank(n, r)).collect()
    }

    /// Parse `"3"` or `"-3"`.
    pub fn parse(n: usize, s: &str) -> Result<Letter> {
        let v: i32 = s
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad letter {s:?}")))?;
        Letter::new(n, v)
    }

    /// Classical weight in the fundamental weight basis, lifted to level zero.
    pub fn weight(self) -> Weight {
        let n = self.n();
        let ct = CartanType::D(n);
        let mut w = Weight::zero(ct);
        let a = self.abs();
        let c = &mut w.coeffs;
        if a == 1 {
            c[1] += 1;
        } else if a <= n - 2 {
            c[a] += 1;
            c[a - 1] -= 1;
        } else if a == n - 1 {
            c[n - 1] += 1;
            c[n] += 1;
            c[n - 2] -= 1;
        } else {
            c[n] += 1;
            c[n - 1] -= 1;
        }
        let w = if self.is_barred() { -w } else { w };
        w.lift_to_level_zero(ct)
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// Compare letters by chain position. Only meaningful as a tie-breaking total order.
pub fn chain_cmp(a: Letter, b: Letter) -> Ordering {
    a.rank.cmp(&b.rank)
}

/// `e_i` on a single letter, `i = 0..=n`.
pub fn letter_e(i: usize, b: Letter) -> Option<Letter> {
    let n = b.n() as i32;
    let v = b.value();
    let i = i as i32;
    let r = if i == 0 {
        match v {
            2 => -1,
            1 => -2,
            _ => return None,
        }
    } else if i < n {
        if v == i + 1 {
            i
        } else if v == -i {
            -(i + 1)
        } else {
            return None;
        }
    } else if v == -(n - 1) {
        n
    } else if v == -n {
        n - 1
    } else {
        return None;
    };
    Some(Letter::of(n as usize, r))
}

/// `f_i` on a single letter, `i = 0..=n`.
pub fn letter_f(i: usize, b: Letter) -> Option<Letter> {
    let n = b.n() as i32;
    let v = b.value();
    let i = i as i32;
    let r = if i == 0 {
        match v {
            -1 => 2,
            -2 => 1,
            _ => return None,
        }
    } else if i < n {
        if v == i {
            i + 1
        } else if v == -(i + 1) {
            -i
        } else {
            return None;
        }
    } else if v == n {
        -(n - 1)
    } else if v == n - 1 {
        -n
    } else {
        return None;
    };
    Some(Letter::of(n as usize, r))
}

pub fn letter_eps(i: usize, b: Letter) -> i64 {
    letter_e(i, b).is_some() as i64
}

pub fn letter_phi(i: usize, b: Letter) -> i64 {
    letter_f(i, b).is_some() as i64
}

/// The affine crystal `B^{1,1}` of `D_n^(1)` on the letters.
#[derive(Clone, Copy, Debug)]
pub struct LetterCrystal {
    pub n: usize,
}

impl Crystal for LetterCrystal {
    type Elem = Letter;

    fn cartan(&self) -> CartanType {
        CartanType::D(self.n)
    }

    fn e(&self, i: usize, b: &Letter) -> Option<Letter> {
        letter_e(i, *b)
    }

    fn f(&self, i: usize, b: &Letter) -> Option<Letter> {
        letter_f(i, *b)
    }

    fn eps(&self, i: usize, b: &Letter) -> i64 {
        letter_eps(i, *b)
    }

    fn phi(&self, i: usize, b: &Letter) -> i64 {
        letter_phi(i, *b)
    }

    fn wt(&self, b: &Letter) -> Weight {
        b.weight()
    }
}

impl FiniteCrystal for LetterCrystal {
    fn elements(&self) -> Vec<Letter> {
        Letter::all(self.n)
    }
}

/// Signature data of a letter word for index `i`.
pub fn word_data(i: usize, w: &[Letter]) -> Vec<(i64, i64)> {
    w.iter().map(|&b| (letter_eps(i, b), letter_phi(i, b))).collect()
}

pub fn word_e(i: usize, w: &[Letter]) -> Option<Vec<Letter>> {
    let j = crate::crystal::word_e_position(&word_data(i, w))?;
    let mut out = w.to_vec();
    out[j] = letter_e(i, w[j])?;
    Some(out)
}

pub fn word_f(i: usize, w: &[Letter]) -> Option<Vec<Letter>> {
    let j = crate::crystal::word_f_position(&word_data(i, w))?;
    let mut out = w.to_vec();
    out[j] = letter_f(i, w[j])?;
    Some(out)
}

pub fn word_eps(i: usize, w: &[Letter]) -> i64 {
    crate::crystal::word_eps_phi(&word_data(i, w)).0
}

pub fn word_phi(i: usize, w: &[Letter]) -> i64 {
    crate::crystal::word_eps_phi(&word_data(i, w)).1
}

pub fn word_weight(n: usize, w: &[Letter]) -> Weight {
    let mut acc = Weight::zero(CartanType::D(n));
    for b in w {
        acc += &b.weight();
    }
    acc
}

/// Raise a word to its classical highest weight word, returning the path of indices.
pub fn word_to_highest_weight(n: usize, w: &[Letter]) -> (Vec<Letter>, Vec<usize>) {
    let mut cur = w.to_vec();
    let mut path = Vec::new();
    'outer: loop {
        for i in 1..=n {
            if let Some(x) = word_e(i, &cur) {
                cur = x;
                path.push(i);
                continue 'outer;
            }
        }
        return (cur, path);
    }
}

/// Apply `f_i` for the indices of a raising path in reverse order.
pub fn word_lower_along(w: &[Letter], path: &[usize]) -> Option<Vec<Letter>> {
    let mut cur = w.to_vec();
    for &i in path.iter().rev() {
        cur = word_f(i, &cur)?;
    }
    Some(cur)
}
