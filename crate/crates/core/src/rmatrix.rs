//! Combinatorial R-matrices and energy functions of `D_n^(1)`:
//! `B^{2,s} ⊗ B^{2,1}` and `B^{1,1} ⊗ B^{2,1}` through highest weight tables and
//! Lecouvey insertion, `B^{1,s} ⊗ B^{1,s'}` by reverse bumping, plus brute-force
//! graph-isomorphism R, an energy oracle from the 0-arrow rule, and Yang-Baxter checks.

use std::collections::{HashMap, VecDeque};
use std::fmt::Debug;
use std::hash::Hash;
use std::sync::Mutex;

use crate::crystal::{enumerate_component, find_isomorphism, Crystal, Tensor2};
use crate::error::{Error, Result};
use crate::insertion::{hw_word_from_q, insert, pq_to_word, reverse_bump, word_to_pq, KnTableau};
use crate::letter::Letter;
use crate::one_row::OneRow;
use crate::tableau::TwoRowTableau;

fn col(n: usize, a: i32, b: i32) -> [Letter; 2] {
    [Letter::of(n, a), Letter::of(n, b)]
}

fn u(n: usize, k: usize) -> TwoRowTableau {
    TwoRowTableau::highest(n, k)
}

/// `u_k` followed by the given columns.
fn u_then(n: usize, k: usize, tail: &[(i32, i32)]) -> TwoRowTableau {
    let mut cols = vec![col(n, 1, 2); k];
    cols.extend(tail.iter().map(|&(a, b)| col(n, a, b)));
    TwoRowTableau::from_cols_unchecked(n, cols)
}

fn single(n: usize, a: i32, b: i32) -> TwoRowTableau {
    TwoRowTableau::from_cols_unchecked(n, vec![col(n, a, b)])
}

fn column_values(b: &TwoRowTableau) -> Option<(i32, i32)> {
    match b.width() {
        0 => None,
        1 => Some((b.at(1, 1).value(), b.at(2, 1).value())),
        _ => unreachable!("B^{{2,1}} elements have at most one column"),
    }
}

/// R on the classical highest weight vectors `u_k ⊗ b` of `B^{2,s} ⊗ B^{2,1}`.
pub fn r_b2s_b21_hw(n: usize, s: usize, k: usize, b: &TwoRowTableau) -> Result<(TwoRowTableau, TwoRowTableau)> {
    let fail = || Error::Undefined(format!("u_{k} ⊗ {b} is not a highest weight vector of B^{{2,{s}}} ⊗ B^{{2,1}}"));
    if k > s {
        return Err(fail());
    }
    let u1 = u(n, 1);
    let out = match column_values(b) {
        None if k == s => (u1, u(n, s - 1)),
        None => (TwoRowTableau::empty(n), u(n, k)),
        Some((1, 2)) if k == s => (u1, u(n, s)),
        Some((1, 2)) if k + 1 == s => (TwoRowTableau::empty(n), u(n, s)),
        Some((1, 2)) => (u1, u_then(n, k + 1, &[(-2, -1)])),
        Some((1, 3)) if k == s => (u1, u_then(n, s - 1, &[(1, 3)])),
        Some((1, 3)) if k >= 1 => (u1, u_then(n, k - 1, &[(1, 3), (3, -3)])),
        Some((3, 4)) if k >= 1 => (u1, u_then(n, k - 1, &[(3, 4)])),
        Some((3, -3)) if k >= 1 => (u1, u_then(n, k - 1, &[(3, -3)])),
        Some((1, -2)) if k >= 1 => (u1, u_then(n, k - 1, &[(1, -2)])),
        Some((3, -2)) if k >= 2 => (u1, u_then(n, k - 2, &[(1, 3)])),
        Some((-2, -1)) if k == 1 => (u1, single(n, -2, -1)),
        Some((-2, -1)) if k >= 2 => (u1, u(n, k - 2)),
        Some((3, -4)) if n == 4 && k >= 1 => (u1, u_then(n, k - 1, &[(3, -4)])),
        _ => return Err(fail()),
    };
    Ok(out)
}

/// Energy on the highest weight vectors, normalised by `H(u_s ⊗ u_1) = 0`.
pub fn h_b2s_b21_hw(n: usize, s: usize, k: usize, b: &TwoRowTableau) -> Result<i64> {
    r_b2s_b21_hw(n, s, k, b)?;
    Ok(match column_values(b) {
        Some((1, 2)) if k == s => 0,
        Some((1, 2)) if k + 1 == s => -1,
        Some((1, 3)) if k == s => -1,
        None if k == s => -1,
        _ => -2,
    })
}

/// Every classical highest weight vector of `B^{2,s} ⊗ B^{2,1}` (the domain of the table).
pub fn b2s_b21_highest_weight_vectors(n: usize, s: usize) -> Vec<(TwoRowTableau, TwoRowTableau)> {
    let mut cands = vec![TwoRowTableau::empty(n)];
    for (a, b) in [(1, 2), (1, 3), (3, 4), (3, -3), (1, -2), (3, -2), (-2, -1), (3, -4)] {
        cands.push(single(n, a, b));
    }
    let mut out = Vec::new();
    for k in 0..=s {
        for b in &cands {
            if r_b2s_b21_hw(n, s, k, b).is_ok() {
                out.push((u(n, k), b.clone()));
            }
        }
    }
    out
}

/// Transport a map of highest weight words to the whole crystal: the image of `w`
/// has the insertion tableau of `w` and the recording tableau of `hw_map(hw(w))`.
fn via_highest_weight(n: usize, w: &[Letter], hw_map: impl FnOnce(&[Letter]) -> Result<Vec<Letter>>) -> Result<Vec<Letter>> {
    let (p, q) = word_to_pq(n, w)?;
    let h = hw_word_from_q(&q)?;
    let h2 = hw_map(&h)?;
    let (_, q2) = word_to_pq(n, &h2)?;
    pq_to_word(&p, &q2)
}

fn split_two_row(n: usize, w: &[Letter], left_width: usize) -> (TwoRowTableau, TwoRowTableau) {
    (
        TwoRowTableau::from_reading(n, &w[..2 * left_width]),
        TwoRowTableau::from_reading(n, &w[2 * left_width..]),
    )
}

/// Highest weight word of `t ⊗ tp` split back into `(u_k, b)`.
fn highest_pair(n: usize, t: &TwoRowTableau, tp: &TwoRowTableau) -> Result<(TwoRowTableau, TwoRowTableau)> {
    let w = [t.reading(), tp.reading()].concat();
    let (_, q) = word_to_pq(n, &w)?;
    let h = hw_word_from_q(&q)?;
    Ok(split_two_row(n, &h, t.width()))
}

/// The R-matrix `B^{2,s} ⊗ B^{2,1} -> B^{2,1} ⊗ B^{2,s}` with memoisation.
pub struct RB2 {
    pub n: usize,
    pub s: usize,
    memo: Mutex<HashMap<(TwoRowTableau, TwoRowTableau), (TwoRowTableau, TwoRowTableau, i64)>>,
    inverse_hw: HashMap<(TwoRowTableau, TwoRowTableau), (TwoRowTableau, TwoRowTableau)>,
}

impl RB2 {
    pub fn new(n: usize, s: usize) -> Result<Self> {
        if n < 4 || s == 0 {
            return Err(Error::Precondition(format!("need n >= 4 and s >= 1, got n={n} s={s}")));
        }
        let mut inverse_hw = HashMap::new();
        for (a, b) in b2s_b21_highest_weight_vectors(n, s) {
            let img = r_b2s_b21_hw(n, s, a.width(), &b)?;
            inverse_hw.insert(img, (a, b));
        }
        Ok(RB2 {
            n,
            s,
            memo: Mutex::new(HashMap::new()),
            inverse_hw,
        })
    }

    fn check(&self, t: &TwoRowTableau, tp: &TwoRowTableau) -> Result<()> {
        if t.n() != self.n || tp.n() != self.n || t.width() > self.s || tp.width() > 1 || !t.is_valid() || !tp.is_valid() {
            return Err(Error::InvalidElement(format!("{t} ⊗ {tp} is not in B^{{2,{}}} ⊗ B^{{2,1}}", self.s)));
        }
        Ok(())
    }

    /// `R(t ⊗ tp) = b̃' ⊗ b̃` and the energy `H(t ⊗ tp)`.
    pub fn apply_with_energy(&self, t: &TwoRowTableau, tp: &TwoRowTableau) -> Result<(TwoRowTableau, TwoRowTableau, i64)> {
        let key = (t.clone(), tp.clone());
        if let Some(v) = self.memo.lock().unwrap().get(&key) {
            return Ok(v.clone());
        }
        self.check(t, tp)?;
        let (n, s) = (self.n, self.s);
        let (ut, ub) = highest_pair(n, t, tp)?;
        let (ha, hb) = r_b2s_b21_hw(n, s, ut.width(), &ub)?;
        let h = h_b2s_b21_hw(n, s, ut.width(), &ub)?;
        let w = [t.reading(), tp.reading()].concat();
        let img = via_highest_weight(n, &w, |_| Ok([ha.reading(), hb.reading()].concat()))?;
        let (a, b) = split_two_row(n, &img, ha.width());
        let v = (a, b, h);
        self.memo.lock().unwrap().insert(key, v.clone());
        Ok(v)
    }

    pub fn apply(&self, t: &TwoRowTableau, tp: &TwoRowTableau) -> Result<(TwoRowTableau, TwoRowTableau)> {
        self.apply_with_energy(t, tp).map(|(a, b, _)| (a, b))
    }

    pub fn energy(&self, t: &TwoRowTableau, tp: &TwoRowTableau) -> Result<i64> {
        self.apply_with_energy(t, tp).map(|(_, _, h)| h)
    }

    /// `R^{-1} : B^{2,1} ⊗ B^{2,s} -> B^{2,s} ⊗ B^{2,1}`.
    pub fn inverse(&self, a: &TwoRowTableau, b: &TwoRowTableau) -> Result<(TwoRowTableau, TwoRowTableau)> {
        let n = self.n;
        if a.width() > 1 || b.width() > self.s || !a.is_valid() || !b.is_valid() {
            return Err(Error::InvalidElement(format!("{a} ⊗ {b} is not in B^{{2,1}} ⊗ B^{{2,{}}}", self.s)));
        }
        let hw = highest_pair(n, a, b)?;
        let (pt, pb) = self
            .inverse_hw
            .get(&hw)
            .ok_or_else(|| Error::Undefined(format!("{} ⊗ {} is not an image of the table", hw.0, hw.1)))?
            .clone();
        let w = [a.reading(), b.reading()].concat();
        let img = via_highest_weight(n, &w, |_| Ok([pt.reading(), pb.reading()].concat()))?;
        Ok(split_two_row(n, &img, pt.width()))
    }
}

/// R on the highest weight vectors `1 ⊗ b` of `B^{1,1} ⊗ B^{2,1}`.
pub fn r_b11_b21_hw(n: usize, b: &TwoRowTableau) -> Result<(TwoRowTableau, Letter)> {
    let l = |v: i32| Letter::of(n, v);
    match column_values(b) {
        Some((1, 2)) => Ok((u(n, 1), l(1))),
        Some((2, 3)) => Ok((u(n, 1), l(3))),
        None => Ok((u(n, 1), l(-2))),
        Some((2, -2)) => Ok((TwoRowTableau::empty(n), l(1))),
        _ => Err(Error::Undefined(format!("1 ⊗ {b} is not a highest weight vector of B^{{1,1}} ⊗ B^{{2,1}}"))),
    }
}

/// `R : B^{1,1} ⊗ B^{2,1} -> B^{2,1} ⊗ B^{1,1}`.
pub fn r_b11_b21(x: Letter, t: &TwoRowTableau) -> Result<(TwoRowTableau, Letter)> {
    let n = x.n();
    if t.width() > 1 || !t.is_valid() {
        return Err(Error::InvalidElement(format!("{t} is not in B^{{2,1}}")));
    }
    let mut w = vec![x];
    w.extend(t.reading());
    let mut out_width = 0;
    let img = via_highest_weight(n, &w, |h| {
        if h[0] != Letter::of(n, 1) {
            return Err(Error::Undefined("first letter of a highest weight word must be 1".into()));
        }
        let (a, c) = r_b11_b21_hw(n, &TwoRowTableau::from_reading(n, &h[1..]))?;
        out_width = a.width();
        let mut v = a.reading();
        v.push(c);
        Ok(v)
    })?;
    Ok((TwoRowTableau::from_reading(n, &img[..2 * out_width]), img[2 * out_width]))
}

/// `R : B^{1,s} ⊗ B^{1,s'} -> B^{1,s'} ⊗ B^{1,s}` and the energy, by insertion and
/// reverse bumping.
pub fn r_one_row(b: &OneRow, bp: &OneRow) -> Result<(OneRow, OneRow, i64)> {
    let n = b.n();
    let (s, sp) = (b.len(), bp.len());
    let z = b.x(1).min(bp.xbar(1)) as usize;
    let bl = b.letters();
    let bpl = bp.letters();
    let t_star: Vec<Letter> = bl[z..].to_vec();
    let v: Vec<Letter> = bpl[..sp - z].to_vec();
    let (k, l) = (sp - z, s - z);
    let mut t = KnTableau {
        n,
        cols: t_star.iter().map(|&x| vec![x]).collect(),
    };
    for &x in v.iter().rev() {
        t = insert(x, &t)?;
    }
    if t.cols.iter().any(|c| c.len() > 2) || t.size() != k + l {
        return Err(Error::Undefined(format!("unexpected insertion tableau {t}")));
    }
    let m = t.cols.iter().filter(|c| c.len() == 2).count();
    let top = t.cols.len();
    if m > k {
        return Err(Error::Undefined(format!("bottom row of {t} is longer than {k}")));
    }
    let mut ws = Vec::with_capacity(l);
    for c in (k..top).rev() {
        let (t2, w) = reverse_bump(&t, c)?;
        t = t2;
        ws.push(w);
    }
    for c in (0..m).rev() {
        let (t2, w) = reverse_bump(&t, c)?;
        t = t2;
        ws.push(w);
    }
    let mut first = vec![Letter::of(n, 1); z];
    first.extend(t.reading().into_iter().rev());
    let mut second = ws;
    second.extend(std::iter::repeat_n(Letter::of(n, -1), z));
    let h = 2 * k.min(l) as i64 - m as i64 - 2 * s.min(sp) as i64;
    Ok((OneRow::from_letters(n, &first)?, OneRow::from_letters(n, &second)?, h))
}

/// `R^Aff(z^m b ⊗ z^k b') = z^{k+H} b̃' ⊗ z^{m-H} b̃`.
pub fn r_aff<E>(m: i64, k: i64, image: (E, E), h: i64) -> ((i64, E), (i64, E)) {
    ((k + h, image.0), (m - h, image.1))
}

/// The unique affine crystal isomorphism `A ⊗ B -> B ⊗ A`, by graph matching.
pub fn brute_force_r<A, B>(a: &A, b: &B, ha: &A::Elem, hb: &B::Elem) -> Result<HashMap<(A::Elem, B::Elem), (B::Elem, A::Elem)>>
where
    A: Crystal + Clone,
    B: Crystal + Clone,
{
    let idx = a.cartan().nodes();
    let ab = Tensor2::new(a.clone(), b.clone());
    let ba = Tensor2::new(b.clone(), a.clone());
    let g1 = enumerate_component(&ab, &(ha.clone(), hb.clone()), &idx, 5_000_000)?;
    let g2 = enumerate_component(&ba, &(hb.clone(), ha.clone()), &idx, 5_000_000)?;
    find_isomorphism(&ab, &g1, &ba, &g2)
}

/// Energy determined by the 0-arrow rule from `H(start) = h0`, propagated over the
/// connected affine crystal; fails if the rule is inconsistent with `r`.
pub fn energy_from_zero_arrows<A, B, F>(
    a: &A,
    b: &B,
    r: F,
    start: (A::Elem, B::Elem),
    h0: i64,
) -> Result<HashMap<(A::Elem, B::Elem), i64>>
where
    A: Crystal + Clone,
    B: Crystal + Clone,
    F: Fn(&A::Elem, &B::Elem) -> (B::Elem, A::Elem),
{
    let ab = Tensor2::new(a.clone(), b.clone());
    let idx = a.cartan().nodes();
    let delta = |x: &(A::Elem, B::Elem), i: usize| -> i64 {
        if i != 0 {
            return 0;
        }
        let (bt, bb) = r(&x.0, &x.1);
        let c1 = a.phi(0, &x.0) >= b.eps(0, &x.1);
        let c2 = b.phi(0, &bt) >= a.eps(0, &bb);
        match (c1, c2) {
            (true, true) => 1,
            (false, false) => -1,
            _ => 0,
        }
    };
    let mut h: HashMap<(A::Elem, B::Elem), i64> = HashMap::new();
    h.insert(start.clone(), h0);
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        let hx = h[&x];
        for &i in &idx {
            let mut push = |y: (A::Elem, B::Elem), hy: i64| -> Result<()> {
                match h.get(&y) {
                    Some(&old) if old != hy => Err(Error::Undefined(format!("energy is inconsistent at {y:?}: {old} vs {hy}"))),
                    Some(_) => Ok(()),
                    None => {
                        h.insert(y.clone(), hy);
                        queue.push_back(y);
                        Ok(())
                    }
                }
            };
            if let Some(y) = ab.e(i, &x) {
                push(y, hx + delta(&x, i))?;
            }
            if let Some(y) = ab.f(i, &x) {
                let d = delta(&y, i);
                push(y, hx - d)?;
            }
        }
    }
    Ok(h)
}

/// Elements of a mixed tensor product, tagged by the factor they belong to.
pub type Tagged<E> = (usize, E);

/// Number of elements of `triples` where the two sides of the Yang-Baxter equation
/// differ, with up to ten examples.
pub fn yang_baxter_violations<E, F>(triples: impl IntoIterator<Item = [Tagged<E>; 3]>, r: F) -> Result<(usize, usize, Vec<String>)>
where
    E: Clone + Eq + Hash + Debug,
    F: Fn(&Tagged<E>, &Tagged<E>) -> Result<(Tagged<E>, Tagged<E>)>,
{
    let r12 = |x: &[Tagged<E>; 3]| -> Result<[Tagged<E>; 3]> {
        let (a, b) = r(&x[0], &x[1])?;
        Ok([a, b, x[2].clone()])
    };
    let r23 = |x: &[Tagged<E>; 3]| -> Result<[Tagged<E>; 3]> {
        let (b, c) = r(&x[1], &x[2])?;
        Ok([x[0].clone(), b, c])
    };
    let mut checked = 0;
    let mut bad = 0;
    let mut examples = Vec::new();
    for x in triples {
        let lhs = r12(&r23(&r12(&x)?)?)?;
        let rhs = r23(&r12(&r23(&x)?)?)?;
        checked += 1;
        if lhs != rhs {
            bad += 1;
            if examples.len() < 10 {
                examples.push(format!("{x:?}: {lhs:?} vs {rhs:?}"));
            }
        }
    }
    Ok((checked, bad, examples))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystal::FiniteCrystal;
    use crate::kr_b2::KrB2;
    use crate::letter::LetterCrystal;
    use crate::one_row::OneRowCrystal;

    #[test]
    fn worked_example() {
        let n = 4;
        let r = RB2::new(n, 2).unwrap();
        let t = TwoRowTableau::from_values(n, &[(-4, 4)]).unwrap();
        let (a, b) = r.apply(&t, &u(n, 1)).unwrap();
        assert_eq!(a, TwoRowTableau::empty(n));
        assert_eq!(b, TwoRowTableau::from_values(n, &[(1, 2), (-4, 4)]).unwrap());
    }

    #[test]
    fn highest_weight_table_is_complete() {
        for (n, s) in [(4, 1), (4, 2), (4, 3), (5, 2), (6, 2)] {
            let c = Tensor2::new(KrB2::new(n, s).unwrap(), KrB2::new(n, 1).unwrap());
            let mut got: Vec<_> = c
                .elements()
                .into_iter()
                .filter(|x| (1..=n).all(|i| c.e(i, x).is_none()))
                .collect();
            got.sort();
            let mut want = b2s_b21_highest_weight_vectors(n, s);
            want.sort();
            assert_eq!(got, want, "n={n} s={s}");
        }
    }

    #[test]
    fn matches_brute_force_and_energy_rule() {
        for (n, s) in [(4, 1), (4, 2), (5, 2)] {
            let a = KrB2::new(n, s).unwrap();
            let b = KrB2::new(n, 1).unwrap();
            let bf = brute_force_r(&a, &b, &a.highest(), &b.highest()).unwrap();
            let r = RB2::new(n, s).unwrap();
            for ((t, tp), img) in &bf {
                assert_eq!(&r.apply(t, tp).unwrap(), img, "n={n} s={s} {t} ⊗ {tp}");
                assert_eq!(&r.inverse(&img.0, &img.1).unwrap(), &(t.clone(), tp.clone()));
            }
            let h = energy_from_zero_arrows(&a, &b, |x, y| bf[&(x.clone(), y.clone())].clone(), (a.highest(), b.highest()), 0)
                .unwrap();
            for (x, v) in &h {
                assert_eq!(r.energy(&x.0, &x.1).unwrap(), *v, "H at {} ⊗ {}", x.0, x.1);
            }
        }
    }

    #[test]
    fn b11_b21_matches_brute_force() {
        for n in [4, 5] {
            let a = LetterCrystal { n };
            let b = KrB2::new(n, 1).unwrap();
            let bf = brute_force_r(&a, &b, &Letter::of(n, 1), &b.highest()).unwrap();
            assert_eq!(bf.len(), 2 * n * b.elements().len());
            for ((x, t), img) in &bf {
                assert_eq!(&r_b11_b21(*x, t).unwrap(), img, "{x} ⊗ {t}");
            }
        }
    }

    #[test]
    fn one_row_matches_brute_force_and_energy_rule() {
        for (n, s, sp) in [(4, 2, 1), (4, 1, 2), (4, 2, 2), (4, 3, 2), (5, 2, 3)] {
            let a = OneRowCrystal { n, s };
            let b = OneRowCrystal { n, s: sp };
            let bf = brute_force_r(&a, &b, &OneRow::highest(n, s), &OneRow::highest(n, sp)).unwrap();
            for ((x, y), img) in &bf {
                let (p, q, _) = r_one_row(x, y).unwrap_or_else(|e| panic!("{x} ⊗ {y}: {e}"));
                assert_eq!(&(p, q), img, "n={n} {x} ⊗ {y}");
            }
            let h = energy_from_zero_arrows(
                &a,
                &b,
                |x, y| bf[&(x.clone(), y.clone())].clone(),
                (OneRow::highest(n, s), OneRow::highest(n, sp)),
                0,
            )
            .unwrap();
            for ((x, y), v) in &h {
                assert_eq!(r_one_row(x, y).unwrap().2, *v, "H at {x} ⊗ {y}");
            }
        }
    }
}
