//! The one-row KR crystal `B^{1,s}` of `D_n^(1)` in coordinates
//! `(x_1, ..., x_n, x̄_n, ..., x̄_1)` counting the letters of a one-row tableau.

use std::fmt;

use crate::crystal::{Crystal, FiniteCrystal};
use crate::error::{Error, Result};
use crate::letter::Letter;
use crate::weight::{CartanType, Weight};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OneRow {
    /// `coords[0..n]` are `x_1..x_n`, `coords[n..2n]` are `x̄_n..x̄_1`.
    pub coords: Vec<u32>,
}

impl OneRow {
    pub fn n(&self) -> usize {
        self.coords.len() / 2
    }

    pub fn len(&self) -> usize {
        self.coords.iter().map(|&c| c as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn x(&self, i: usize) -> i64 {
        self.coords[i - 1] as i64
    }

    pub fn xbar(&self, i: usize) -> i64 {
        let n = self.n();
        self.coords[2 * n - i] as i64
    }

    fn x_mut(&mut self, i: usize) -> &mut u32 {
        &mut self.coords[i - 1]
    }

    fn xbar_mut(&mut self, i: usize) -> &mut u32 {
        let n = self.n();
        &mut self.coords[2 * n - i]
    }

    pub fn from_coords(n: usize, s: usize, coords: Vec<u32>) -> Result<OneRow> {
        if coords.len() != 2 * n {
            return Err(Error::InvalidElement(format!(
                "expected {} coordinates, got {}",
                2 * n,
                coords.len()
            )));
        }
        let r = OneRow { coords };
        if r.len() != s {
            return Err(Error::InvalidElement(format!("coordinates sum to {} not {s}", r.len())));
        }
        if r.x(n) > 0 && r.xbar(n) > 0 {
            return Err(Error::InvalidElement("both x_n and x̄_n are positive".into()));
        }
        Ok(r)
    }

    /// Highest weight element `1^s`.
    pub fn highest(n: usize, s: usize) -> OneRow {
        let mut coords = vec![0; 2 * n];
        coords[0] = s as u32;
        OneRow { coords }
    }

    /// The row as a weakly increasing list of letters.
    pub fn letters(&self) -> Vec<Letter> {
        let n = self.n();
        let mut out = Vec::with_capacity(self.len());
        for (k, &c) in self.coords.iter().enumerate() {
            for _ in 0..c {
                out.push(Letter::from_rank(n, k + 1));
            }
        }
        out
    }

    pub fn from_letters(n: usize, letters: &[Letter]) -> Result<OneRow> {
        let mut coords = vec![0u32; 2 * n];
        for l in letters {
            coords[l.rank() - 1] += 1;
        }
        OneRow::from_coords(n, letters.len(), coords)
    }

    pub fn parse(n: usize, s: usize, text: &str) -> Result<OneRow> {
        let coords: std::result::Result<Vec<u32>, _> =
            text.split(',').map(|t| t.trim().parse::<u32>()).collect();
        let coords = coords.map_err(|_| Error::Parse(format!("bad coordinates {text:?}")))?;
        OneRow::from_coords(n, s, coords)
    }
}

impl fmt::Debug for OneRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for OneRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

fn pos(x: i64) -> i64 {
    x.max(0)
}

#[derive(Clone, Copy, Debug)]
pub struct OneRowCrystal {
    pub n: usize,
    pub s: usize,
}

impl Crystal for OneRowCrystal {
    type Elem = OneRow;

    fn cartan(&self) -> CartanType {
        CartanType::D(self.n)
    }

    fn e(&self, i: usize, b: &OneRow) -> Option<OneRow> {
        if self.eps(i, b) == 0 {
            return None;
        }
        let n = self.n;
        let mut r = b.clone();
        if i == 0 {
            if b.x(2) > b.xbar(2) {
                *r.x_mut(2) -= 1;
                *r.xbar_mut(1) += 1;
            } else {
                *r.x_mut(1) -= 1;
                *r.xbar_mut(2) += 1;
            }
        } else if i < n {
            if b.x(i + 1) > b.xbar(i + 1) {
                *r.x_mut(i) += 1;
                *r.x_mut(i + 1) -= 1;
            } else {
                *r.xbar_mut(i + 1) += 1;
                *r.xbar_mut(i) -= 1;
            }
        } else if b.xbar(n) == 0 {
            *r.x_mut(n) += 1;
            *r.xbar_mut(n - 1) -= 1;
        } else {
            *r.x_mut(n - 1) += 1;
            *r.xbar_mut(n) -= 1;
        }
        Some(r)
    }

    fn f(&self, i: usize, b: &OneRow) -> Option<OneRow> {
        if self.phi(i, b) == 0 {
            return None;
        }
        let n = self.n;
        let mut r = b.clone();
        if i == 0 {
            if b.x(2) >= b.xbar(2) {
                *r.x_mut(2) += 1;
                *r.xbar_mut(1) -= 1;
            } else {
                *r.x_mut(1) += 1;
                *r.xbar_mut(2) -= 1;
            }
        } else if i < n {
            if b.x(i + 1) >= b.xbar(i + 1) {
                *r.x_mut(i) -= 1;
                *r.x_mut(i + 1) += 1;
            } else {
                *r.xbar_mut(i + 1) -= 1;
                *r.xbar_mut(i) += 1;
            }
        } else if b.x(n) > 0 {
            *r.x_mut(n) -= 1;
            *r.xbar_mut(n - 1) += 1;
        } else {
            *r.x_mut(n - 1) -= 1;
            *r.xbar_mut(n) += 1;
        }
        Some(r)
    }

    fn eps(&self, i: usize, b: &OneRow) -> i64 {
        let n = self.n;
        if i == 0 {
            b.x(1) + pos(b.x(2) - b.xbar(2))
        } else if i < n {
            b.xbar(i) + pos(b.x(i + 1) - b.xbar(i + 1))
        } else {
            b.xbar(n - 1) + b.xbar(n)
        }
    }

    fn phi(&self, i: usize, b: &OneRow) -> i64 {
        let n = self.n;
        if i == 0 {
            b.xbar(1) + pos(b.xbar(2) - b.x(2))
        } else if i < n {
            b.x(i) + pos(b.xbar(i + 1) - b.x(i + 1))
        } else {
            b.x(n - 1) + b.x(n)
        }
    }

    fn wt(&self, b: &OneRow) -> Weight {
        let n = self.n;
        let ct = CartanType::D(n);
        let mut w = Weight::zero(ct);
        let c = &mut w.coeffs;
        c[0] = b.xbar(1) - b.x(1) + b.xbar(2) - b.x(2);
        c[1] = b.x(1) - b.xbar(1) + b.xbar(2) - b.x(2);
        for i in 2..=n - 2 {
            c[i] = b.x(i) - b.xbar(i) + b.xbar(i + 1) - b.x(i + 1);
        }
        c[n - 1] = b.x(n - 1) - b.xbar(n - 1) + b.xbar(n) - b.x(n);
        c[n] = b.x(n - 1) - b.xbar(n - 1) + b.x(n) - b.xbar(n);
        w
    }
}

impl FiniteCrystal for OneRowCrystal {
    fn elements(&self) -> Vec<OneRow> {
        let n = self.n;
        let mut out = Vec::new();
        let mut cur = vec![0u32; 2 * n];
        fn rec(k: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<OneRow>, n: usize) {
            if k == cur.len() - 1 {
                cur[k] = left;
                if !(cur[n - 1] > 0 && cur[n] > 0) {
                    out.push(OneRow { coords: cur.clone() });
                }
                return;
            }
            for v in 0..=left {
                cur[k] = v;
                rec(k + 1, left - v, cur, out, n);
            }
            cur[k] = 0;
        }
        rec(0, self.s as u32, &mut cur, &mut out, n);
        out.sort();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystal::check_axioms;
    use crate::letter::{word_e, word_eps, word_f, word_phi};

    #[test]
    fn axioms_hold() {
        for (n, s) in [(4, 1), (4, 2), (4, 3), (5, 2), (6, 2)] {
            let c = OneRowCrystal { n, s };
            let rep = check_axioms(&c, &CartanType::D(n).nodes());
            assert!(rep.ok(), "n={n} s={s}: {:?}", rep.violations);
        }
    }

    #[test]
    fn classical_structure_is_the_decreasing_reading_word() {
        for (n, s) in [(4, 2), (4, 3), (5, 2)] {
            let c = OneRowCrystal { n, s };
            for b in c.elements() {
                let mut w = b.letters();
                w.reverse();
                for i in 1..=n {
                    assert_eq!(c.eps(i, &b), word_eps(i, &w));
                    assert_eq!(c.phi(i, &b), word_phi(i, &w));
                    let via_word = word_e(i, &w).map(|mut v| {
                        v.reverse();
                        OneRow::from_letters(n, &v).unwrap()
                    });
                    assert_eq!(c.e(i, &b), via_word, "e_{i} on {b}");
                    let via_word = word_f(i, &w).map(|mut v| {
                        v.reverse();
                        OneRow::from_letters(n, &v).unwrap()
                    });
                    assert_eq!(c.f(i, &b), via_word, "f_{i} on {b}");
                }
            }
        }
    }

    #[test]
    fn single_box_matches_letter_crystal() {
        use crate::letter::LetterCrystal;
        let n = 5;
        let c = OneRowCrystal { n, s: 1 };
        let l = LetterCrystal { n };
        for b in c.elements() {
            let x = b.letters()[0];
            for i in 0..=n {
                assert_eq!(c.e(i, &b).map(|r| r.letters()[0]), l.e(i, &x));
                assert_eq!(c.wt(&b), l.wt(&x));
            }
        }
    }

    #[test]
    fn size_matches_dimension_of_symmetric_power() {
        // V(s Lambda_1) of D_n: C(2n+s-1, s) - C(2n+s-3, s-2).
        fn binom(a: usize, b: usize) -> usize {
            (0..b).fold(1usize, |acc, i| acc * (a - i) / (i + 1))
        }
        for (n, s) in [(4, 2), (4, 3), (5, 3), (6, 2)] {
            let c = OneRowCrystal { n, s };
            let expect = binom(2 * n + s - 1, s) - if s >= 2 { binom(2 * n + s - 3, s - 2) } else { 0 };
            assert_eq!(c.elements().len(), expect);
        }
    }
}
