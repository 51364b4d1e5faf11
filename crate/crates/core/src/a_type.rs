//! Rectangular KR crystals `B^{r,s}` of type `A_m^(1)` realised on `r x s`
//! semistandard tableaux over `1..=m+1`, with `e_0` by promotion, and their
//! combinatorial R-matrix and energy via Schensted row insertion.

use std::collections::HashMap;
use std::fmt;

use crate::crystal::{word_e_position, word_f_position, word_eps_phi, Crystal, FiniteCrystal};
use crate::error::{Error, Result};
use crate::weight::{CartanType, Weight};

/// An `r x s` semistandard tableau; `rows[i][j]` is the entry in row `i+1`, column `j+1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rect {
    pub rows: Vec<Vec<u8>>,
}

impl Rect {
    pub fn r(&self) -> usize {
        self.rows.len()
    }

    pub fn s(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len())
    }

    pub fn is_semistandard(&self) -> bool {
        let s = self.s();
        self.rows.iter().all(|r| r.len() == s && r.windows(2).all(|w| w[0] <= w[1]))
            && self.rows.windows(2).all(|p| (0..s).all(|j| p[0][j] < p[1][j]))
    }

    /// Row `i` of the coordinate matrix: the number of letters `j` in row `i`.
    pub fn coords(&self, letters: usize) -> Vec<Vec<u32>> {
        self.rows
            .iter()
            .map(|row| (1..=letters).map(|j| row.iter().filter(|&&x| x as usize == j).count() as u32).collect())
            .collect()
    }

    pub fn from_coords(coords: &[Vec<u32>]) -> Result<Rect> {
        let rows: Vec<Vec<u8>> = coords
            .iter()
            .map(|c| {
                c.iter()
                    .enumerate()
                    .flat_map(|(j, &k)| std::iter::repeat_n((j + 1) as u8, k as usize))
                    .collect()
            })
            .collect();
        let t = Rect { rows };
        if !t.is_semistandard() {
            return Err(Error::InvalidElement(format!("coordinates {coords:?} do not give a semistandard rectangle")));
        }
        Ok(t)
    }

    /// Row word: rows top to bottom, each read right to left.
    pub fn row_word(&self) -> Vec<u8> {
        self.rows.iter().flat_map(|r| r.iter().rev().copied()).collect()
    }

    fn from_row_word(r: usize, s: usize, w: &[u8]) -> Rect {
        Rect {
            rows: (0..r).map(|i| w[i * s..(i + 1) * s].iter().rev().copied().collect()).collect(),
        }
    }
}

impl fmt::Display for Rect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(""))
            .collect();
        write!(f, "{}", rows.join("/"))
    }
}

impl fmt::Debug for Rect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn letter_data(i: usize, a: u8) -> (i64, i64) {
    let a = a as usize;
    ((a == i + 1) as i64, (a == i) as i64)
}

fn word_op(i: usize, w: &[u8], raise: bool) -> Option<Vec<u8>> {
    let data: Vec<(i64, i64)> = w.iter().map(|&a| letter_data(i, a)).collect();
    let p = if raise { word_e_position(&data)? } else { word_f_position(&data)? };
    let mut out = w.to_vec();
    out[p] = if raise { out[p] - 1 } else { out[p] + 1 };
    Some(out)
}

/// `B^{r,s}` of `A_m^(1)`.
#[derive(Clone, Copy, Debug)]
pub struct ARect {
    pub m: usize,
    pub r: usize,
    pub s: usize,
}

impl ARect {
    pub fn new(m: usize, r: usize, s: usize) -> Result<Self> {
        if m == 0 || r == 0 || r > m || s == 0 {
            return Err(Error::Precondition(format!("no B^{{{r},{s}}} for A_{m}^(1)")));
        }
        Ok(ARect { m, r, s })
    }

    fn letters(&self) -> usize {
        self.m + 1
    }

    pub fn highest(&self) -> Rect {
        Rect {
            rows: (1..=self.r).map(|i| vec![i as u8; self.s]).collect(),
        }
    }

    pub fn contains(&self, t: &Rect) -> bool {
        t.r() == self.r
            && t.s() == self.s
            && t.is_semistandard()
            && t.rows.iter().flatten().all(|&x| x >= 1 && x as usize <= self.letters())
    }

    fn classical_e(&self, i: usize, t: &Rect) -> Option<Rect> {
        word_op(i, &t.row_word(), true).map(|w| Rect::from_row_word(self.r, self.s, &w))
    }

    fn classical_f(&self, i: usize, t: &Rect) -> Option<Rect> {
        word_op(i, &t.row_word(), false).map(|w| Rect::from_row_word(self.r, self.s, &w))
    }

    fn classical_eps_phi(&self, i: usize, t: &Rect) -> (i64, i64) {
        let data: Vec<(i64, i64)> = t.row_word().iter().map(|&a| letter_data(i, a)).collect();
        word_eps_phi(&data)
    }

    /// Promotion: entries `i` become `i+1` and entries `m+1` become `1`.
    pub fn promotion(&self, t: &Rect) -> Rect {
        let big = self.letters() as u8;
        let (r, s) = (self.r, self.s);
        let mut g: Vec<Vec<Option<u8>>> = t
            .rows
            .iter()
            .map(|row| row.iter().map(|&x| (x != big).then_some(x + 1)).collect())
            .collect();
        // Holes sit at the end of the bottom row; slide each towards the top-left.
        let holes: Vec<usize> = (0..s).filter(|&j| g[r - 1][j].is_none()).collect();
        for &j0 in &holes {
            let (mut i, mut j) = (r - 1, j0);
            loop {
                let left = if j > 0 { g[i][j - 1] } else { None };
                let up = if i > 0 { g[i - 1][j] } else { None };
                match (left, up) {
                    (None, None) => break,
                    (Some(l), Some(u)) if l > u => {
                        g[i][j] = Some(l);
                        g[i][j - 1] = None;
                        j -= 1;
                    }
                    (Some(l), None) => {
                        g[i][j] = Some(l);
                        g[i][j - 1] = None;
                        j -= 1;
                    }
                    (_, Some(u)) => {
                        g[i][j] = Some(u);
                        g[i - 1][j] = None;
                        i -= 1;
                    }
                }
            }
        }
        Rect {
            rows: g.into_iter().map(|row| row.into_iter().map(|x| x.unwrap_or(1)).collect()).collect(),
        }
    }

    /// Inverse promotion.
    pub fn promotion_inverse(&self, t: &Rect) -> Rect {
        let big = self.letters() as u8;
        let (r, s) = (self.r, self.s);
        let mut g: Vec<Vec<Option<u8>>> = t
            .rows
            .iter()
            .map(|row| row.iter().map(|&x| (x != 1).then_some(x - 1)).collect())
            .collect();
        let holes: Vec<usize> = (0..s).filter(|&j| g[0][j].is_none()).collect();
        for &j0 in holes.iter().rev() {
            let (mut i, mut j) = (0, j0);
            loop {
                let right = if j + 1 < s { g[i][j + 1] } else { None };
                let down = if i + 1 < r { g[i + 1][j] } else { None };
                match (right, down) {
                    (None, None) => break,
                    (Some(a), Some(d)) if a < d => {
                        g[i][j] = Some(a);
                        g[i][j + 1] = None;
                        j += 1;
                    }
                    (Some(a), None) => {
                        g[i][j] = Some(a);
                        g[i][j + 1] = None;
                        j += 1;
                    }
                    (_, Some(d)) => {
                        g[i][j] = Some(d);
                        g[i + 1][j] = None;
                        i += 1;
                    }
                }
            }
        }
        Rect {
            rows: g.into_iter().map(|row| row.into_iter().map(|x| x.unwrap_or(big)).collect()).collect(),
        }
    }
}

impl Crystal for ARect {
    type Elem = Rect;

    fn cartan(&self) -> CartanType {
        CartanType::A(self.m)
    }

    fn e(&self, i: usize, b: &Rect) -> Option<Rect> {
        if i == 0 {
            let x = self.classical_e(1, &self.promotion(b))?;
            Some(self.promotion_inverse(&x))
        } else {
            self.classical_e(i, b)
        }
    }

    fn f(&self, i: usize, b: &Rect) -> Option<Rect> {
        if i == 0 {
            let x = self.classical_f(1, &self.promotion(b))?;
            Some(self.promotion_inverse(&x))
        } else {
            self.classical_f(i, b)
        }
    }

    fn eps(&self, i: usize, b: &Rect) -> i64 {
        if i == 0 {
            self.classical_eps_phi(1, &self.promotion(b)).0
        } else {
            self.classical_eps_phi(i, b).0
        }
    }

    fn phi(&self, i: usize, b: &Rect) -> i64 {
        if i == 0 {
            self.classical_eps_phi(1, &self.promotion(b)).1
        } else {
            self.classical_eps_phi(i, b).1
        }
    }

    fn wt(&self, b: &Rect) -> Weight {
        let ct = self.cartan();
        let content: Vec<i64> = (1..=self.letters())
            .map(|j| b.rows.iter().flatten().filter(|&&x| x as usize == j).count() as i64)
            .collect();
        let mut w = Weight::zero(ct);
        for i in 1..=self.m {
            w.coeffs[i] = content[i - 1] - content[i];
        }
        w.lift_to_level_zero(ct)
    }
}

impl FiniteCrystal for ARect {
    fn elements(&self) -> Vec<Rect> {
        let mut rows_out: Vec<Vec<Vec<u8>>> = vec![vec![]];
        let big = self.letters() as u8;
        for _ in 0..self.r {
            let mut next = Vec::new();
            for partial in &rows_out {
                for row in weak_rows(self.s, 1, big) {
                    if let Some(prev) = partial.last() {
                        if !(0..self.s).all(|j| prev[j] < row[j]) {
                            continue;
                        }
                    }
                    let mut p = partial.clone();
                    p.push(row);
                    next.push(p);
                }
            }
            rows_out = next;
        }
        rows_out.into_iter().map(|rows| Rect { rows }).collect()
    }
}

fn weak_rows(len: usize, lo: u8, hi: u8) -> Vec<Vec<u8>> {
    if len == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for a in lo..=hi {
        for mut rest in weak_rows(len - 1, a, hi) {
            rest.insert(0, a);
            out.push(rest);
        }
    }
    out
}

/// Schensted row insertion of the letters of `word`, in order, into `t` (given by rows).
pub fn row_insert(t: &[Vec<u8>], word: &[u8]) -> Vec<Vec<u8>> {
    let mut p: Vec<Vec<u8>> = t.to_vec();
    for &x in word {
        let mut x = x;
        let mut r = 0;
        loop {
            if r == p.len() {
                p.push(vec![x]);
                break;
            }
            match p[r].iter().position(|&y| y > x) {
                Some(j) => {
                    std::mem::swap(&mut p[r][j], &mut x);
                    r += 1;
                }
                None => {
                    p[r].push(x);
                    break;
                }
            }
        }
    }
    p
}

/// Standard (bottom to top, left to right) row word.
fn western_row_word(t: &Rect) -> Vec<u8> {
    t.rows.iter().rev().flat_map(|r| r.iter().copied()).collect()
}

/// The insertion tableau of `T ⊗ T'`: the row word of `T` row-inserted into `T'`.
pub fn insertion_tableau(t: &Rect, tp: &Rect) -> Vec<Vec<u8>> {
    row_insert(&tp.rows, &western_row_word(t))
}

/// The combinatorial R-matrix `B^{r,s} ⊗ B^{r',s'} -> B^{r',s'} ⊗ B^{r,s}` of type `A_m^(1)`,
/// tabulated from the characterisation by equal insertion tableaux.
pub struct ARMatrix {
    pub left: ARect,
    pub right: ARect,
    by_p: HashMap<Vec<Vec<u8>>, (Rect, Rect)>,
}

impl ARMatrix {
    pub fn new(left: ARect, right: ARect) -> Result<Self> {
        if left.m != right.m {
            return Err(Error::Precondition("both factors must have the same type".into()));
        }
        let mut by_p = HashMap::new();
        let ls = left.elements();
        for a in right.elements() {
            for b in &ls {
                let p = insertion_tableau(&a, b);
                if by_p.insert(p, (a.clone(), b.clone())).is_some() {
                    return Err(Error::Undefined("insertion tableaux of the codomain are not distinct".into()));
                }
            }
        }
        Ok(ARMatrix { left, right, by_p })
    }

    pub fn apply(&self, t: &Rect, tp: &Rect) -> Result<(Rect, Rect)> {
        if !self.left.contains(t) || !self.right.contains(tp) {
            return Err(Error::InvalidElement(format!("{t} ⊗ {tp}")));
        }
        self.by_p
            .get(&insertion_tableau(t, tp))
            .cloned()
            .ok_or_else(|| Error::Undefined(format!("no image for {t} ⊗ {tp}")))
    }

    pub fn energy(&self, t: &Rect, tp: &Rect) -> i64 {
        energy(t, tp)
    }
}

/// `d(T,T') - min(r,r') min(s,s')`, where `d` counts the boxes of the insertion
/// tableau strictly right of column `max(s,s')`.
pub fn energy(t: &Rect, tp: &Rect) -> i64 {
    let p = insertion_tableau(t, tp);
    let c = t.s().max(tp.s());
    let d: usize = p.iter().map(|row| row.len().saturating_sub(c)).sum();
    d as i64 - (t.r().min(tp.r()) * t.s().min(tp.s())) as i64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystal::{check_axioms, enumerate_component, find_isomorphism, Tensor2};

    #[test]
    fn promotion_is_invertible_and_shifts_content() {
        for (m, r, s) in [(1, 1, 3), (3, 2, 2), (3, 2, 3), (4, 2, 2)] {
            let c = ARect::new(m, r, s).unwrap();
            for t in c.elements() {
                let p = c.promotion(&t);
                assert!(c.contains(&p), "{t} -> {p}");
                assert_eq!(c.promotion_inverse(&p), t);
                let cnt = |x: &Rect, v: u8| x.rows.iter().flatten().filter(|&&y| y == v).count();
                assert_eq!(cnt(&p, 1), cnt(&t, (m + 1) as u8));
            }
        }
    }

    #[test]
    fn axioms_hold() {
        for (m, r, s) in [(1, 1, 2), (1, 1, 3), (3, 2, 1), (3, 2, 2), (3, 1, 2)] {
            let c = ARect::new(m, r, s).unwrap();
            let rep = check_axioms(&c, &CartanType::A(m).nodes());
            assert!(rep.ok(), "A_{m} B^{r},{s}: {:?}", &rep.violations[..rep.violations.len().min(5)]);
        }
    }

    fn brute(l: ARect, r: ARect) -> HashMap<(Rect, Rect), (Rect, Rect)> {
        let idx = CartanType::A(l.m).nodes();
        let a = Tensor2::new(l, r);
        let b = Tensor2::new(r, l);
        let ga = enumerate_component(&a, &(l.highest(), r.highest()), &idx, 1_000_000).unwrap();
        let gb = enumerate_component(&b, &(r.highest(), l.highest()), &idx, 1_000_000).unwrap();
        find_isomorphism(&a, &ga, &b, &gb).unwrap()
    }

    #[test]
    fn insertion_r_matches_graph_isomorphism() {
        for (m, (r1, s1), (r2, s2)) in [(1, (1, 3), (1, 2)), (1, (1, 2), (1, 2)), (3, (2, 2), (2, 1)), (3, (2, 3), (2, 2))] {
            let l = ARect::new(m, r1, s1).unwrap();
            let r = ARect::new(m, r2, s2).unwrap();
            let rm = ARMatrix::new(l, r).unwrap();
            let bf = brute(l, r);
            assert_eq!(bf.len(), l.elements().len() * r.elements().len());
            for ((t, tp), img) in &bf {
                assert_eq!(&rm.apply(t, tp).unwrap(), img, "{t} ⊗ {tp}");
            }
        }
    }

    #[test]
    fn energy_obeys_zero_arrow_rule() {
        for (m, (r1, s1), (r2, s2)) in [(1, (1, 3), (1, 2)), (3, (2, 2), (2, 1)), (3, (2, 3), (2, 2))] {
            let l = ARect::new(m, r1, s1).unwrap();
            let r = ARect::new(m, r2, s2).unwrap();
            let rm = ARMatrix::new(l, r).unwrap();
            let tc = Tensor2::new(l, r);
            for (t, tp) in tc.elements() {
                for i in CartanType::A(m).nodes() {
                    let Some((u, up)) = tc.e(i, &(t.clone(), tp.clone())) else { continue };
                    let (bt, bb) = rm.apply(&t, &tp).unwrap();
                    let delta = if i != 0 {
                        0
                    } else {
                        let c1 = l.phi(0, &t) >= r.eps(0, &tp);
                        let c2 = r.phi(0, &bt) >= l.eps(0, &bb);
                        match (c1, c2) {
                            (true, true) => 1,
                            (false, false) => -1,
                            _ => 0,
                        }
                    };
                    assert_eq!(energy(&u, &up), energy(&t, &tp) + delta, "e_{i} on {t} ⊗ {tp}");
                }
            }
            assert_eq!(energy(&l.highest(), &r.highest()), 0);
        }
    }

    #[test]
    fn one_row_a1_examples() {
        let c3 = ARect::new(1, 1, 3).unwrap();
        let c2 = ARect::new(1, 1, 2).unwrap();
        let rm = ARMatrix::new(c3, c2).unwrap();
        let e = |x: &[u32]| Rect::from_coords(&[x.to_vec()]).unwrap();
        let cases = [
            ([3, 0], [0, 2], [2, 0], [1, 2], -2),
            ([2, 1], [1, 1], [1, 1], [2, 1], -1),
            ([0, 3], [2, 0], [0, 2], [2, 1], 0),
        ];
        for (a, b, c, d, h) in cases {
            assert_eq!(rm.apply(&e(&a), &e(&b)).unwrap(), (e(&c), e(&d)));
            assert_eq!(energy(&e(&a), &e(&b)), h);
        }
    }
}
