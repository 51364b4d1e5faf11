//! Two-row Kashiwara-Nakashima tableaux: the classical crystals `B(k Lambda_2)` of `D_n`.

use std::fmt;

use crate::error::{Error, Result};
use crate::letter::{word_e, word_eps, word_f, word_phi, word_weight, Letter, LetterOrder};
use crate::weight::Weight;

/// A `2 x k` tableau stored column by column, `cols[j] = [top, bottom]`.
/// `k = 0` is the empty tableau.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwoRowTableau {
    n: u8,
    cols: Vec<[Letter; 2]>,
}

impl TwoRowTableau {
    pub fn empty(n: usize) -> Self {
        TwoRowTableau {
            n: n as u8,
            cols: Vec::new(),
        }
    }

    /// Build from columns, checking the tableau conditions.
    pub fn new(n: usize, cols: Vec<[Letter; 2]>) -> Result<Self> {
        let t = TwoRowTableau { n: n as u8, cols };
        if !t.is_valid() {
            return Err(Error::InvalidElement(format!("{t} is not a tableau of B(kL2) for D_{n}")));
        }
        Ok(t)
    }

    /// Build without validation (the caller guarantees validity or checks it later).
    pub fn from_cols_unchecked(n: usize, cols: Vec<[Letter; 2]>) -> Self {
        TwoRowTableau { n: n as u8, cols }
    }

    /// Columns given as pairs of signed values, e.g. `[(1, 2), (2, -2)]`.
    pub fn from_values(n: usize, cols: &[(i32, i32)]) -> Result<Self> {
        let mut v = Vec::with_capacity(cols.len());
        for &(a, b) in cols {
            v.push([Letter::new(n, a)?, Letter::new(n, b)?]);
        }
        Self::new(n, v)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    /// Number of columns.
    pub fn width(&self) -> usize {
        self.cols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cols.is_empty()
    }

    pub fn cols(&self) -> &[[Letter; 2]] {
        &self.cols
    }

    /// Entry in row `r` (1 or 2) and column `c` (1-based).
    pub fn at(&self, r: usize, c: usize) -> Letter {
        self.cols[c - 1][r - 1]
    }

    /// Highest weight tableau `u_k` with all columns `(1, 2)`.
    pub fn highest(n: usize, k: usize) -> Self {
        TwoRowTableau {
            n: n as u8,
            cols: vec![[Letter::of(n, 1), Letter::of(n, 2)]; k],
        }
    }

    /// Reading word `T_{1,k} T_{2,k} ... T_{1,1} T_{2,1}`.
    pub fn reading(&self) -> Vec<Letter> {
        let mut w = Vec::with_capacity(2 * self.cols.len());
        for c in self.cols.iter().rev() {
            w.push(c[0]);
            w.push(c[1]);
        }
        w
    }

    /// Inverse of [`TwoRowTableau::reading`] (no validation).
    pub fn from_reading(n: usize, w: &[Letter]) -> Self {
        assert!(w.len().is_multiple_of(2));
        let mut cols: Vec<[Letter; 2]> = w.chunks(2).map(|c| [c[0], c[1]]).collect();
        cols.reverse();
        TwoRowTableau { n: n as u8, cols }
    }

    pub fn is_valid(&self) -> bool {
        is_valid_columns(self.n(), &self.cols)
    }

    pub fn weight(&self) -> Weight {
        word_weight(self.n(), &self.reading())
    }

    pub fn count(&self, v: i32, row: usize) -> usize {
        self.cols.iter().filter(|c| c[row - 1].is(v)).count()
    }

    /// Classical `e_i` (`1 <= i <= n`) through the reading word.
    pub fn e(&self, i: usize) -> Option<Self> {
        word_e(i, &self.reading()).map(|w| Self::from_reading(self.n(), &w))
    }

    pub fn f(&self, i: usize) -> Option<Self> {
        word_f(i, &self.reading()).map(|w| Self::from_reading(self.n(), &w))
    }

    pub fn eps(&self, i: usize) -> i64 {
        word_eps(i, &self.reading())
    }

    pub fn phi(&self, i: usize) -> i64 {
        word_phi(i, &self.reading())
    }

    /// Parse the text syntax `top/bottom`, e.g. `"12/2-2"`; `"e"` is the empty tableau.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let t = text.trim();
        if t == "e" || t.is_empty() {
            return Ok(Self::empty(n));
        }
        let rows: Vec<&str> = t.split('/').collect();
        if rows.len() != 2 {
            return Err(Error::Parse(format!("expected two rows separated by '/': {text:?}")));
        }
        let top = parse_row(n, rows[0])?;
        let bottom = parse_row(n, rows[1])?;
        if top.len() != bottom.len() {
            return Err(Error::Parse(format!("rows of different length: {text:?}")));
        }
        let cols = top.into_iter().zip(bottom).map(|(a, b)| [a, b]).collect();
        Self::new(n, cols)
    }
}

/// Parse a row of letters. Without separators every letter is a single digit
/// with an optional `-`; with spaces or commas the tokens are whole letters.
pub fn parse_row(n: usize, text: &str) -> Result<Vec<Letter>> {
    let t = text.trim();
    if t.contains(|c: char| c.is_whitespace() || c == ',') {
        return t
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| Letter::parse(n, s))
            .collect();
    }
    let mut out = Vec::new();
    let mut neg = false;
    for ch in t.chars() {
        match ch {
            '-' => {
                if neg {
                    return Err(Error::Parse(format!("double bar in {text:?}")));
                }
                neg = true;
            }
            d if d.is_ascii_digit() => {
                let v = d.to_digit(10).unwrap() as i32;
                out.push(Letter::new(n, if neg { -v } else { v })?);
                neg = false;
            }
            _ => return Err(Error::Parse(format!("unexpected {ch:?} in {text:?}"))),
        }
    }
    if neg {
        return Err(Error::Parse(format!("dangling bar in {text:?}")));
    }
    Ok(out)
}

fn write_row(f: &mut fmt::Formatter<'_>, letters: impl Iterator<Item = Letter>, n: usize) -> fmt::Result {
    let sep = if n >= 10 { " " } else { "" };
    let parts: Vec<String> = letters.map(|l| l.to_string()).collect();
    write!(f, "{}", parts.join(sep))
}

impl fmt::Display for TwoRowTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cols.is_empty() {
            return write!(f, "e");
        }
        write_row(f, self.cols.iter().map(|c| c[0]), self.n())?;
        write!(f, "/")?;
        write_row(f, self.cols.iter().map(|c| c[1]), self.n())
    }
}

impl fmt::Debug for TwoRowTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A single column `(a, b)` of `B(Lambda_2)`: `a < b`, or `{a, b} = {n, n̄}`, and not `(1, 1̄)`.
pub fn is_valid_column(n: usize, a: Letter, b: Letter) -> bool {
    if a.is(1) && b.is(-1) {
        return false;
    }
    match a.compare(b) {
        LetterOrder::Less => true,
        LetterOrder::Incomparable => a.abs() == n,
        _ => false,
    }
}

fn is_valid_pair(n: usize, c: [Letter; 2], d: [Letter; 2]) -> bool {
    let (a1, a2, b1, b2) = (c[0], c[1], d[0], d[1]);
    if !a1.le(b1) || !a2.le(b2) {
        return false;
    }
    // a a / * ā
    if a1 == b1 && b2 == a1.bar() {
        return false;
    }
    // a * / ā ā
    if a2 == b2 && a2 == a1.bar() {
        return false;
    }
    let n = n as i32;
    let cfg = |x: i32, y: i32, z: i32, w: i32| a1.is(x) && b1.is(y) && a2.is(z) && b2.is(w);
    if cfg(n - 1, n, n, -(n - 1)) || cfg(n - 1, -n, -n, -(n - 1)) {
        return false;
    }
    true
}

pub fn is_valid_columns(n: usize, cols: &[[Letter; 2]]) -> bool {
    if n < 4 {
        return false;
    }
    if cols.iter().any(|c| c[0].n() != n || c[1].n() != n) {
        return false;
    }
    if !cols.iter().all(|c| is_valid_column(n, c[0], c[1])) {
        return false;
    }
    cols.windows(2).all(|w| is_valid_pair(n, w[0], w[1]))
}

/// All columns of `B(Lambda_2)` in chain order.
pub fn all_columns(n: usize) -> Vec<[Letter; 2]> {
    let letters = Letter::all(n);
    let mut out = Vec::new();
    for &a in &letters {
        for &b in &letters {
            if is_valid_column(n, a, b) {
                out.push([a, b]);
            }
        }
    }
    out
}

/// All tableaux of `B(k Lambda_2)`.
pub fn enumerate_b_k_lambda2(n: usize, k: usize) -> Vec<TwoRowTableau> {
    let columns = all_columns(n);
    let mut out = Vec::new();
    let mut cur: Vec<[Letter; 2]> = Vec::with_capacity(k);
    fn rec(
        n: usize,
        k: usize,
        columns: &[[Letter; 2]],
        cur: &mut Vec<[Letter; 2]>,
        out: &mut Vec<TwoRowTableau>,
    ) {
        if cur.len() == k {
            out.push(TwoRowTableau::from_cols_unchecked(n, cur.clone()));
            return;
        }
        for &c in columns {
            if let Some(&last) = cur.last() {
                if !is_valid_pair(n, last, c) {
                    continue;
                }
            }
            cur.push(c);
            rec(n, k, columns, cur, out);
            cur.pop();
        }
    }
    rec(n, k, &columns, &mut cur, &mut out);
    out
}

/// Weyl dimension of the `D_n` module with highest weight `k omega_2`.
pub fn weyl_dimension_k_omega2(n: usize, k: usize) -> u128 {
    // epsilon coordinates of lambda + rho and rho.
    let rho: Vec<i128> = (0..n).map(|i| (n - 1 - i) as i128).collect();
    let mut lr = rho.clone();
    lr[0] += k as i128;
    lr[1] += k as i128;
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for i in 0..n {
        for j in i + 1..n {
            num *= (lr[i] - lr[j]) * (lr[i] + lr[j]);
            den *= (rho[i] - rho[j]) * (rho[i] + rho[j]);
            let g = gcd(num, den);
            num /= g;
            den /= g;
        }
    }
    assert_eq!(den, 1);
    num as u128
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn counts_match_weyl_dimension() {
        for (n, kmax) in [(4, 3), (5, 3), (6, 2)] {
            for k in 0..=kmax {
                let got = enumerate_b_k_lambda2(n, k).len() as u128;
                assert_eq!(got, weyl_dimension_k_omega2(n, k), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn single_component_closed_under_operators() {
        for (n, k) in [(4, 1), (4, 2), (4, 3), (5, 2)] {
            let all: HashSet<TwoRowTableau> = enumerate_b_k_lambda2(n, k).into_iter().collect();
            let u = TwoRowTableau::highest(n, k);
            let mut seen = HashSet::from([u.clone()]);
            let mut stack = vec![u];
            while let Some(t) = stack.pop() {
                for i in 1..=n {
                    for x in [t.e(i), t.f(i)].into_iter().flatten() {
                        assert!(all.contains(&x), "{x} reached from {t} is not valid");
                        if seen.insert(x.clone()) {
                            stack.push(x);
                        }
                    }
                }
            }
            assert_eq!(seen.len(), all.len(), "n={n} k={k}");
        }
    }

    #[test]
    fn text_round_trip() {
        let t = TwoRowTableau::parse(4, "12/2-2").unwrap();
        assert_eq!(t, TwoRowTableau::from_values(4, &[(1, 2), (2, -2)]).unwrap());
        assert_eq!(t.to_string(), "12/2-2");
        assert_eq!(TwoRowTableau::parse(4, "e").unwrap(), TwoRowTableau::empty(4));
        assert!(TwoRowTableau::parse(4, "1/-1").is_err());
        assert_eq!(
            TwoRowTableau::parse(4, "1 -4/2 4").unwrap(),
            TwoRowTableau::parse(4, "1-4/24").unwrap()
        );
    }
}
