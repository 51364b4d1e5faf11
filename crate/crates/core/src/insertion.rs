//! Lecouvey's column insertion for Kashiwara-Nakashima tableaux of type `D_n`
//! and the associated oscillating tableaux.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::crystal::{enumerate_component, TensorPower};
use crate::error::{Error, Result};
use crate::letter::{word_lower_along, word_to_highest_weight, Letter, LetterCrystal, LetterOrder};

fn lt(n: usize, v: i32) -> Letter {
    Letter::of(n, v)
}

/// The crystal isomorphism `xi : B(1 2 1) -> B(1 1 2)` given by its case table.
pub fn xi(x: Letter, y: Letter, z: Letter) -> Result<[Letter; 3]> {
    let n = x.n();
    let ni = n as i32;
    let mut hits: Vec<[Letter; 3]> = Vec::new();
    let is_n_pair = |a: Letter, b: Letter| a.abs() == n && b.abs() == n && a != b;
    // 1
    if z.le(x) && x.lt(y) && y != z.bar() {
        hits.push([x, z, y]);
    }
    // 2
    if x.lt(z) && z.le(y) && y != x.bar() {
        hits.push([y, x, z]);
    }
    // 3
    if y == z.bar() && !z.is_barred() && (z.abs() as i32) < ni - 1 && z.lt(x) && x.lt(z.bar()) {
        let zp = lt(n, z.value() + 1);
        hits.push([x, zp, zp.bar()]);
    }
    // 4
    if y == x.bar() && !x.is_barred() && x.abs() > 1 && x.abs() < n && x.le(z) && z.le(x.bar()) {
        let xm = lt(n, x.value() - 1);
        hits.push([xm.bar(), xm, z]);
    }
    // 5
    if y.ge(lt(n, -(ni - 1))) && is_n_pair(x, z) {
        hits.push([y, x, z]);
    }
    // 6
    if !z.is_barred() && (z.abs() as i32) < ni && is_n_pair(x, y) {
        hits.push([x, z, y]);
    }
    // 7
    if (x.is(ni) && y.is(-ni) && z.is(-ni)) || (x.is(-ni) && y.is(ni) && z.is(ni)) {
        hits.push([lt(n, -(ni - 1)), lt(n, ni - 1), z]);
    }
    // 8
    if x.is(-ni) && y.is(-(ni - 1)) && z.is(ni - 1) {
        hits.push([lt(n, -ni), lt(n, -ni), lt(n, ni)]);
    }
    // 9
    if x.is(ni) && y.is(-(ni - 1)) && z.is(ni - 1) {
        hits.push([lt(n, ni), lt(n, ni), lt(n, -ni)]);
    }
    match hits.len() {
        0 => Err(Error::NoCase(format!("{x}{y}{z}"))),
        1 => Ok(hits[0]),
        _ => {
            if hits.iter().all(|h| *h == hits[0]) {
                Ok(hits[0])
            } else {
                Err(Error::NoCase(format!("{x}{y}{z}: conflicting cases {hits:?}")))
            }
        }
    }
}

type XiTable = HashMap<[Letter; 3], [Letter; 3]>;

/// Inverse of `xi` on `B(1 1 2)`, tabulated from the component `B(1 2 1)`.
fn xi_inverse_table(n: usize) -> Arc<XiTable> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<XiTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().unwrap().get(&n) {
        return t.clone();
    }
    let c = TensorPower {
        base: LetterCrystal { n },
        k: 3,
    };
    let seed = vec![lt(n, 1), lt(n, 2), lt(n, 1)];
    let idx: Vec<usize> = (1..=n).collect();
    let g = enumerate_component(&c, &seed, &idx, 1_000_000).expect("B(1 2 1) is finite");
    let mut table = HashMap::new();
    for w in &g.nodes {
        if let Ok(img) = xi(w[0], w[1], w[2]) {
            table.insert(img, [w[0], w[1], w[2]]);
        }
    }
    let table = Arc::new(table);
    cache.lock().unwrap().insert(n, table.clone());
    table
}

pub fn xi_inverse(x: Letter, y: Letter, z: Letter) -> Result<[Letter; 3]> {
    xi_inverse_table(x.n())
        .get(&[x, y, z])
        .copied()
        .ok_or_else(|| Error::NoCase(format!("xi^-1({x}{y}{z})")))
}

/// A Kashiwara-Nakashima tableau of type `D_n`, stored as columns (top to bottom).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KnTableau {
    pub n: usize,
    pub cols: Vec<Vec<Letter>>,
}

impl KnTableau {
    pub fn empty(n: usize) -> Self {
        KnTableau { n, cols: Vec::new() }
    }

    pub fn shape(&self) -> Vec<usize> {
        self.cols.iter().map(|c| c.len()).collect()
    }

    pub fn size(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    /// Reading word: columns from right to left, each from top to bottom.
    pub fn reading(&self) -> Vec<Letter> {
        self.cols.iter().rev().flat_map(|c| c.iter().copied()).collect()
    }

    /// The sign `+`, `-` or `0` attached to the columns of height `n`.
    pub fn flag(&self) -> i8 {
        let n = self.n;
        for c in &self.cols {
            if c.len() == n {
                for (r, l) in c.iter().enumerate() {
                    if l.abs() == n {
                        let k = r + 1;
                        let even = (n - k).is_multiple_of(2);
                        return if l.is_barred() != even { 1 } else { -1 };
                    }
                }
            }
        }
        0
    }

    pub fn from_two_row(t: &crate::tableau::TwoRowTableau) -> Self {
        KnTableau {
            n: t.n(),
            cols: t.cols().iter().map(|c| c.to_vec()).collect(),
        }
    }

    /// Row `r` (1-based) read left to right.
    pub fn row(&self, r: usize) -> Vec<Letter> {
        self.cols.iter().filter(|c| c.len() >= r).map(|c| c[r - 1]).collect()
    }
}

impl fmt::Display for KnTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cols.is_empty() {
            return write!(f, "e");
        }
        let h = self.cols[0].len();
        let rows: Vec<String> = (1..=h)
            .map(|r| self.row(r).iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "{}", rows.join(" / "))
    }
}

impl fmt::Debug for KnTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Outcome of inserting a letter into a single column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ColumnInsert {
    /// Cases 1 and 4: the letter is added at the bottom.
    Grown(Vec<Letter>),
    /// Cases 2 and 5: a new column and a letter bumped into the next column.
    Bumped(Vec<Letter>, Letter),
    /// Case 3: a pair `(z, z̄)` is removed.
    Reduced(Vec<Letter>),
}

fn violating_pair(n: usize, s: &[Letter]) -> Option<usize> {
    for y in 1..=n {
        let ly = lt(n, y as i32);
        if s.contains(&ly) && s.contains(&ly.bar()) {
            let cnt = s.iter().filter(|&&x| x.le(ly) || x.ge(ly.bar())).count();
            if cnt > y {
                return Some(y);
            }
        }
    }
    None
}

/// Insert `b` into the column `col`.
pub fn column_insert(b: Letter, col: &[Letter]) -> Result<ColumnInsert> {
    let n = b.n();
    if col.is_empty() {
        return Ok(ColumnInsert::Grown(vec![b]));
    }
    let last = *col.last().unwrap();
    let below = b.gt(last) || b.compare(last) == LetterOrder::Incomparable;
    if !below && col.len() == 1 {
        return Ok(ColumnInsert::Bumped(vec![b], col[0]));
    }
    if below {
        let mut s = col.to_vec();
        s.push(b);
        if let Some(z) = violating_pair(n, &s) {
            let lz = lt(n, z as i32);
            let pos_z = s.iter().position(|&x| x == lz).unwrap();
            s.remove(pos_z);
            let pos_zb = s.iter().position(|&x| x == lz.bar()).unwrap();
            s.remove(pos_zb);
            return Ok(ColumnInsert::Reduced(s));
        }
        return Ok(ColumnInsert::Grown(s));
    }
    let mut w: Vec<Letter> = col.to_vec();
    w.push(b);
    let k = col.len();
    for i in (0..k - 1).rev() {
        let r = xi(w[i], w[i + 1], w[i + 2])?;
        w[i] = r[0];
        w[i + 1] = r[1];
        w[i + 2] = r[2];
    }
    Ok(ColumnInsert::Bumped(w[1..].to_vec(), w[0]))
}

/// Insert `b` into the tableau `t` (returns `b -> t`).
pub fn insert(b: Letter, t: &KnTableau) -> Result<KnTableau> {
    let n = t.n;
    if t.cols.is_empty() {
        return Ok(KnTableau { n, cols: vec![vec![b]] });
    }
    let rest = KnTableau {
        n,
        cols: t.cols[1..].to_vec(),
    };
    match column_insert(b, &t.cols[0])? {
        ColumnInsert::Grown(c) => {
            let mut cols = vec![c];
            cols.extend(rest.cols);
            Ok(KnTableau { n, cols })
        }
        ColumnInsert::Bumped(c, x) => {
            let tail = insert(x, &rest)?;
            let mut cols = vec![c];
            cols.extend(tail.cols);
            Ok(KnTableau { n, cols })
        }
        ColumnInsert::Reduced(c) => {
            let mut cur = rest;
            for &x in &c {
                cur = insert(x, &cur)?;
            }
            Ok(cur)
        }
    }
}

/// One step `(O_k, eps_k)` of an oscillating tableau: column heights and a sign.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OscStep {
    pub shape: Vec<usize>,
    pub flag: i8,
}

impl OscStep {
    pub fn row_lengths(&self) -> Vec<usize> {
        let h = self.shape.first().copied().unwrap_or(0);
        (1..=h).map(|r| self.shape.iter().filter(|&&c| c >= r).count()).collect()
    }
}

/// An oscillating tableau `Q_0 = (empty, 0), Q_1, ..., Q_l`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Oscillating {
    pub n: usize,
    pub steps: Vec<OscStep>,
}

impl Oscillating {
    pub fn len(&self) -> usize {
        self.steps.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Row indices (1-based, signed: negative for a removed box) of the successive changes.
    pub fn moves(&self) -> Vec<i64> {
        let mut out = Vec::new();
        for w in self.steps.windows(2) {
            let a = w[0].row_lengths();
            let b = w[1].row_lengths();
            let h = a.len().max(b.len());
            for r in 0..h {
                let x = a.get(r).copied().unwrap_or(0);
                let y = b.get(r).copied().unwrap_or(0);
                if y == x + 1 {
                    out.push(r as i64 + 1);
                } else if x == y + 1 {
                    out.push(-(r as i64 + 1));
                }
            }
        }
        out
    }
}

/// `(P, Q)` of a word: `P = b_l -> (... -> (b_1 -> empty))`.
pub fn word_to_pq(n: usize, w: &[Letter]) -> Result<(KnTableau, Oscillating)> {
    let mut p = KnTableau::empty(n);
    let mut steps = vec![OscStep {
        shape: vec![],
        flag: 0,
    }];
    for &b in w {
        p = insert(b, &p)?;
        steps.push(OscStep {
            shape: p.shape(),
            flag: p.flag(),
        });
    }
    Ok((p, Oscillating { n, steps }))
}

/// The unique highest weight word whose recording tableau is `q`.
pub fn hw_word_from_q(q: &Oscillating) -> Result<Vec<Letter>> {
    let n = q.n;
    let moves = q.moves();
    if moves.len() != q.len() {
        return Err(Error::InvalidElement("consecutive shapes must differ by one box".into()));
    }
    let mut out = Vec::with_capacity(moves.len());
    for (k, &m) in moves.iter().enumerate() {
        let r = m.unsigned_abs() as usize;
        let letter = if r < n {
            if m > 0 {
                lt(n, r as i32)
            } else {
                lt(n, -(r as i32))
            }
        } else if m > 0 {
            // A box is added in row n: the sign after the step decides.
            if q.steps[k + 1].flag >= 0 {
                lt(n, n as i32)
            } else {
                lt(n, -(n as i32))
            }
        } else {
            // A box leaves row n: the sign before the step decides.
            if q.steps[k].flag < 0 {
                lt(n, n as i32)
            } else {
                lt(n, -(n as i32))
            }
        };
        out.push(letter);
    }
    Ok(out)
}

/// Inverse of [`word_to_pq`]. The word is recovered by raising the reading of `P`
/// to its highest weight word and lowering `hw_word_from_q(Q)` along the same path.
pub fn pq_to_word(p: &KnTableau, q: &Oscillating) -> Result<Vec<Letter>> {
    let n = p.n;
    let last = q.steps.last().unwrap();
    if last.shape != p.shape() {
        return Err(Error::InvalidElement(format!(
            "shape of P {:?} differs from final shape of Q {:?}",
            p.shape(),
            last.shape
        )));
    }
    let h = hw_word_from_q(q)?;
    let r = p.reading();
    let (rp, _) = word_to_pq(n, &r)?;
    if &rp != p {
        return Err(Error::InvalidElement(format!("{p} is not a Kashiwara-Nakashima tableau")));
    }
    let (_, path) = word_to_highest_weight(n, &r);
    let w = word_lower_along(&h, &path)
        .ok_or_else(|| Error::InvalidElement(format!("P={p} and Q are not compatible")))?;
    let (p2, q2) = word_to_pq(n, &w)?;
    if &p2 != p || &q2 != q {
        return Err(Error::InvalidElement(format!("P={p} and Q are not compatible")));
    }
    Ok(w)
}

/// Remove the bottom box of column `j` (0-based) by reverse column insertion,
/// returning the smaller tableau and the letter that leaves through the first column.
pub fn reverse_bump(t: &KnTableau, j: usize) -> Result<(KnTableau, Letter)> {
    let n = t.n;
    if j >= t.cols.len() || (j + 1 < t.cols.len() && t.cols[j + 1].len() >= t.cols[j].len()) {
        return Err(Error::Precondition(format!("column {j} of {t} does not end in a corner")));
    }
    let mut cols = t.cols.clone();
    let mut c = cols[j].pop().unwrap();
    if cols[j].is_empty() {
        cols.remove(j);
    }
    for i in (0..j).rev() {
        let col = &cols[i];
        if col.len() == 1 {
            let b = col[0];
            cols[i] = vec![c];
            c = b;
        } else {
            let mut w = vec![c];
            w.extend(col.iter().copied());
            for p in 0..col.len() - 1 {
                let r = xi_inverse(w[p], w[p + 1], w[p + 2])?;
                w[p] = r[0];
                w[p + 1] = r[1];
                w[p + 2] = r[2];
            }
            let b = w.pop().unwrap();
            cols[i] = w;
            c = b;
        }
    }
    Ok((KnTableau { n, cols }, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystal::find_isomorphism;
    use crate::letter::word_e;

    fn word(n: usize, v: &[i32]) -> Vec<Letter> {
        v.iter().map(|&x| lt(n, x)).collect()
    }

    fn all_words(n: usize, l: usize) -> Vec<Vec<Letter>> {
        let mut out = vec![vec![]];
        for _ in 0..l {
            let mut next = Vec::new();
            for w in &out {
                for b in Letter::all(n) {
                    let mut v = w.clone();
                    v.push(b);
                    next.push(v);
                }
            }
            out = next;
        }
        out
    }

    #[test]
    fn xi_table_is_the_crystal_isomorphism() {
        for n in 4..=6 {
            let c = TensorPower {
                base: LetterCrystal { n },
                k: 3,
            };
            let idx: Vec<usize> = (1..=n).collect();
            let a = enumerate_component(&c, &word(n, &[1, 2, 1]), &idx, 100_000).unwrap();
            let b = enumerate_component(&c, &word(n, &[1, 1, 2]), &idx, 100_000).unwrap();
            let iso = find_isomorphism(&c, &a, &c, &b).unwrap();
            for (x, y) in &iso {
                let got = xi(x[0], x[1], x[2]).unwrap_or_else(|e| panic!("n={n}: {e}"));
                assert_eq!(got.to_vec(), *y, "n={n} xi({x:?})");
            }
        }
    }

    #[test]
    fn two_row_readings_are_insertion_normal() {
        for (n, k) in [(4, 1), (4, 2), (5, 2)] {
            for t in crate::tableau::enumerate_b_k_lambda2(n, k) {
                let (p, _) = word_to_pq(n, &t.reading()).unwrap();
                assert_eq!(p, KnTableau::from_two_row(&t));
            }
        }
    }

    #[test]
    fn highest_word_from_growth_rows() {
        let n = 4;
        let (_, q) = word_to_pq(n, &word(n, &[1, 2, 1, 2])).unwrap();
        assert_eq!(hw_word_from_q(&q).unwrap(), word(n, &[1, 2, 1, 2]));
        let (_, q) = word_to_pq(n, &word(n, &[1, 2, -2, -1])).unwrap();
        assert_eq!(q.moves(), vec![1, 2, -2, -1]);
        assert_eq!(hw_word_from_q(&q).unwrap(), word(n, &[1, 2, -2, -1]));
    }

    #[test]
    fn worked_insertion_example() {
        let n = 4;
        let (p, q) = word_to_pq(n, &word(n, &[2, 4, -4, 3])).unwrap();
        assert_eq!(p.cols, vec![word(n, &[2, 3, -4]), word(n, &[4])]);
        let shapes: Vec<Vec<usize>> = q.steps.iter().map(|s| s.shape.clone()).collect();
        assert_eq!(shapes, vec![vec![], vec![1], vec![2], vec![3], vec![3, 1]]);
    }

    #[test]
    fn insertion_commutes_with_raising_operators() {
        let n = 4;
        for l in 1..=4 {
            for w in all_words(n, l) {
                let (p, q) = word_to_pq(n, &w).unwrap();
                for i in 1..=n {
                    if let Some(w2) = word_e(i, &w) {
                        let (p2, q2) = word_to_pq(n, &w2).unwrap();
                        assert_eq!(q2, q, "Q changes under e_{i} at {w:?}");
                        assert_eq!(Some(p2.reading()), word_e(i, &p.reading()), "P at {w:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn round_trip_all_short_words() {
        for (n, lmax) in [(4, 4), (5, 3)] {
            for l in 1..=lmax {
                for w in all_words(n, l) {
                    let (p, q) = word_to_pq(n, &w).unwrap();
                    let h = hw_word_from_q(&q).unwrap();
                    assert!((1..=n).all(|i| word_e(i, &h).is_none()), "{h:?} not highest weight");
                    assert_eq!(word_to_pq(n, &h).unwrap().1, q);
                    assert_eq!(pq_to_word(&p, &q).unwrap(), w);
                }
            }
        }
    }

    #[test]
    fn reverse_bump_undoes_growth() {
        let n = 4;
        for l in 1..=5 {
            for w in all_words(n, l) {
                let (p, q) = word_to_pq(n, &w).unwrap();
                let (prev, _) = word_to_pq(n, &w[..l - 1]).unwrap();
                let grew = q.steps[l].shape.iter().sum::<usize>() > q.steps[l - 1].shape.iter().sum::<usize>();
                if grew {
                    let ps = p.shape();
                    let pv = prev.shape();
                    let j = (0..ps.len()).find(|&j| pv.get(j).copied().unwrap_or(0) != ps[j]).unwrap();
                    let (back, b) = reverse_bump(&p, j).unwrap();
                    assert_eq!(back, prev, "{w:?}");
                    assert_eq!(b, w[l - 1]);
                }
            }
        }
    }
}
