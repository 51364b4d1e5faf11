//! The Dynkin automorphism `sigma` of `B^{2,s}` exchanging the nodes 0 and 1,
//! built from the level-changing maps `iota` and the map `psi` on branching
//! components, and the resulting 0-arrows.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::letter::Letter;
use crate::tableau::{enumerate_b_k_lambda2, is_valid_column, is_valid_columns, TwoRowTableau};

/// Move a letter `d` steps along its unbarred index: `a -> a+d`, `ā -> (a+d)̄`.
fn shift(l: Letter, d: i32) -> Option<Letter> {
    let n = l.n() as i32;
    let v = l.value();
    let a = v.abs() + d;
    if a < 1 || a > n {
        return None;
    }
    Letter::new(n as usize, if v > 0 { a } else { -a }).ok()
}

fn lt(n: usize, v: i32) -> Letter {
    Letter::of(n, v)
}

/// `iota_k^{k+1}`: the element corresponding to `T` one level up.
pub fn iota_up(t: &TwoRowTableau) -> Result<TwoRowTableau> {
    let n = t.n();
    let k = t.width();
    let ni = n as i32;
    if k == 0 {
        return Ok(TwoRowTableau::from_cols_unchecked(n, vec![[lt(n, 2), lt(n, -2)]]));
    }
    let mut cols = vec![[lt(n, 1), lt(n, 1)]; k + 1];
    // Column k+1.
    if t.at(1, k).is(1) {
        cols[k] = [lt(n, 2), lt(n, -2)];
    } else {
        cols[k] = [t.at(1, k), lt(n, -1)];
    }
    for i in 2..=k {
        let a = t.at(1, i - 1);
        let b = t.at(2, i);
        if b != a.bar() {
            cols[i - 1] = [a, b];
        } else if t.at(2, i - 1).is(ni) && a.is(ni - 1) {
            cols[i - 1] = [lt(n, -ni), lt(n, ni)];
        } else {
            let top = shift(a, 1).ok_or_else(|| Error::Undefined(format!("iota_up({t}): column {i}")))?;
            let bot = shift(b, 1).ok_or_else(|| Error::Undefined(format!("iota_up({t}): column {i}")))?;
            cols[i - 1] = [top, bot];
        }
    }
    if t.at(2, 1).is(-1) {
        cols[0] = [lt(n, 2), lt(n, -2)];
    } else {
        cols[0] = [lt(n, 1), t.at(2, 1)];
    }
    let out = TwoRowTableau::from_cols_unchecked(n, cols);
    debug_assert!(out.is_valid(), "iota_up({t}) = {out} is not a tableau");
    Ok(out)
}

/// `iota_{k+1}^k`: the unique preimage of `T` under [`iota_up`], if it exists.
pub fn iota_down(u: &TwoRowTableau) -> Option<TwoRowTableau> {
    let n = u.n();
    let k1 = u.width();
    if k1 == 0 {
        return None;
    }
    let k = k1 - 1;
    if k == 0 {
        return if u.at(1, 1).is(2) && u.at(2, 1).is(-2) {
            Some(TwoRowTableau::empty(n))
        } else {
            None
        };
    }
    let ni = n as i32;
    let top_cands = |j: usize| -> Vec<Letter> {
        let x = u.at(1, j + 1);
        let mut v = vec![x];
        if j == k {
            if x.is(2) {
                v.push(lt(n, 1));
            }
        } else {
            if !x.is_barred() {
                if let Some(y) = shift(x, -1) {
                    v.push(y);
                }
            }
            if x.is(-ni) {
                v.push(lt(n, ni - 1));
            }
        }
        v
    };
    let bot_cands = |j: usize| -> Vec<Letter> {
        let x = u.at(2, j);
        let mut v = vec![x];
        if j == 1 {
            if x.is(-2) {
                v.push(lt(n, -1));
            }
        } else {
            if x.is_barred() {
                if let Some(y) = shift(x, -1) {
                    v.push(y);
                }
            }
            if x.is(ni) {
                v.push(lt(n, -(ni - 1)));
            }
        }
        v
    };
    let tops: Vec<Vec<Letter>> = (1..=k).map(top_cands).collect();
    let bots: Vec<Vec<Letter>> = (1..=k).map(bot_cands).collect();
    let mut found: Option<TwoRowTableau> = None;
    let mut cur: Vec<[Letter; 2]> = Vec::with_capacity(k);
    fn rec(
        n: usize,
        k: usize,
        tops: &[Vec<Letter>],
        bots: &[Vec<Letter>],
        cur: &mut Vec<[Letter; 2]>,
        u: &TwoRowTableau,
        found: &mut Option<TwoRowTableau>,
    ) {
        let j = cur.len();
        if j == k {
            let t = TwoRowTableau::from_cols_unchecked(n, cur.clone());
            if let Ok(up) = iota_up(&t) {
                if &up == u {
                    assert!(found.is_none() || found.as_ref() == Some(&t), "iota_down is not unique at {u}");
                    *found = Some(t);
                }
            }
            return;
        }
        for &a in &tops[j] {
            for &b in &bots[j] {
                if !is_valid_column(n, a, b) {
                    continue;
                }
                cur.push([a, b]);
                if is_valid_columns(n, &cur[j.saturating_sub(1)..]) {
                    rec(n, k, tops, bots, cur, u, found);
                }
                cur.pop();
            }
        }
    }
    rec(n, k, &tops, &bots, &mut cur, u, &mut found);
    found
}

/// `iota_j^k` for the level `j` = width of `t`; `None` when the result is 0.
pub fn iota(t: &TwoRowTableau, k: usize) -> Option<TwoRowTableau> {
    let mut cur = t.clone();
    while cur.width() < k {
        cur = iota_up(&cur).ok()?;
    }
    while cur.width() > k {
        cur = iota_down(&cur)?;
    }
    Some(cur)
}

/// `min { j : iota_k^j(T) != 0 }`.
pub fn min_level(t: &TwoRowTableau) -> usize {
    let mut cur = t.clone();
    while let Some(d) = iota_down(&cur) {
        cur = d;
    }
    cur.width()
}

/// The map `psi` on `B(l Lambda_2)`, which trades one `1` in the top row for
/// one `1̄` in the bottom row. Defined when the top row contains a `1`.
pub fn psi(t: &TwoRowTableau) -> Result<TwoRowTableau> {
    let n = t.n();
    let ni = n as i32;
    let l = t.width();
    let a = t.count(1, 1);
    let b = t.count(-1, 2);
    if a == 0 {
        return Err(Error::Undefined(format!("psi({t}): no 1 in the top row")));
    }
    let und = || Error::Undefined(format!("psi({t})"));
    // 1-based access with out-of-range returning None.
    let top = |j: usize| if j >= 1 && j <= l { Some(t.at(1, j)) } else { None };
    let bot = |j: usize| if j >= 1 && j <= l { Some(t.at(2, j)) } else { None };
    let mut p_top: Vec<Letter> = (1..=l).map(|j| t.at(1, j)).collect();
    let mut p_bot: Vec<Letter> = (1..=l).map(|j| t.at(2, j)).collect();
    // p_*[j-1] holds T'_{*, j}.
    let stop_at = |i: usize, tb_i: Letter| -> bool {
        let Some(t1) = top(i + 1) else { return false };
        let t2 = bot(i + 1).unwrap();
        if !t1.ge(tb_i) {
            return false;
        }
        if t1.abs() == n && tb_i.abs() == n && t1 != tb_i {
            return false;
        }
        if t2 == t1.bar() && t1.le(tb_i) && tb_i.le(t2) {
            return false;
        }
        true
    };
    let mut i = a;
    let m;
    loop {
        if i >= l - b || stop_at(i, p_bot[i - 1]) {
            m = i.min(l - b);
            break;
        }
        let t1 = top(i + 1).unwrap();
        let t2 = bot(i + 1).unwrap();
        if t2 != t1.bar() {
            p_top[i - 1] = t1;
            p_bot[i] = t2;
        } else if p_bot[i - 1].is(ni) && t1.is(-ni) {
            p_top[i - 1] = lt(n, ni - 1);
            p_bot[i] = lt(n, -(ni - 1));
        } else {
            p_top[i - 1] = shift(t1, -1).ok_or_else(und)?;
            p_bot[i] = shift(t2, -1).ok_or_else(und)?;
        }
        i += 1;
    }
    let tm1 = top(m).unwrap();
    let tm2 = bot(m).unwrap();
    let x = if tm2 != tm1.bar() {
        tm2
    } else if m >= 2 && bot(m - 1).unwrap().is(ni) && tm1.is(-ni) {
        lt(n, -(ni - 1))
    } else {
        shift(tm2, -1).ok_or_else(und)?
    };
    if m == l {
        p_top[m - 1] = x;
    } else {
        let n1 = top(m + 1).unwrap();
        let n2 = bot(m + 1).unwrap();
        if n2 != x.bar() {
            p_top[m - 1] = x;
            p_bot[m - 1] = n2;
        } else if n1.is(-ni) && x.is(ni - 1) {
            p_top[m - 1] = lt(n, -ni);
            p_bot[m - 1] = lt(n, ni);
        } else {
            p_top[m - 1] = shift(x, 1).ok_or_else(und)?;
            p_bot[m - 1] = shift(n2, 1).ok_or_else(und)?;
        }
    }
    for i in m + 1..l - b {
        let t1 = t.at(1, i);
        let n1 = t.at(1, i + 1);
        let n2 = t.at(2, i + 1);
        if t1 != n2.bar() {
            p_top[i - 1] = t1;
            p_bot[i - 1] = n2;
        } else if n1.is(-ni) && t1.is(ni - 1) {
            p_top[i - 1] = lt(n, -ni);
            p_bot[i - 1] = lt(n, ni);
        } else {
            p_top[i - 1] = shift(t1, 1).ok_or_else(und)?;
            p_bot[i - 1] = shift(n2, 1).ok_or_else(und)?;
        }
    }
    p_bot[l - b - 1] = lt(n, -1);
    let cols = p_top.into_iter().zip(p_bot).map(|(x, y)| [x, y]).collect();
    let out = TwoRowTableau::from_cols_unchecked(n, cols);
    if !out.is_valid() {
        return Err(Error::Undefined(format!("psi({t}) produced the non-tableau {out}")));
    }
    Ok(out)
}

type PsiTable = HashMap<TwoRowTableau, TwoRowTableau>;

fn psi_inverse_table(n: usize, l: usize) -> Arc<PsiTable> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<PsiTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().unwrap().get(&(n, l)) {
        return t.clone();
    }
    let mut table = HashMap::new();
    for t in enumerate_b_k_lambda2(n, l) {
        if t.count(1, 1) > 0 {
            if let Ok(p) = psi(&t) {
                table.insert(p, t);
            }
        }
    }
    let table = Arc::new(table);
    cache.lock().unwrap().insert((n, l), table.clone());
    table
}

/// Inverse of [`psi`], by lookup over `B(l Lambda_2)`.
pub fn psi_inverse(t: &TwoRowTableau) -> Result<TwoRowTableau> {
    psi_inverse_table(t.n(), t.width())
        .get(t)
        .cloned()
        .ok_or_else(|| Error::Undefined(format!("psi^-1({t})")))
}

/// The `*BC` dual of `T`.
pub fn star_bc(t: &TwoRowTableau) -> Result<TwoRowTableau> {
    let k = t.width();
    let l = min_level(t);
    let mut cur = iota(t, l).expect("iota down to the minimal level");
    let a = cur.count(1, 1);
    let b = cur.count(-1, 2);
    if a >= b {
        for _ in 0..a - b {
            cur = psi(&cur)?;
        }
    } else {
        for _ in 0..b - a {
            cur = psi_inverse(&cur)?;
        }
    }
    iota(&cur, k).ok_or_else(|| Error::Undefined(format!("iota back to level {k} from {cur}")))
}

/// `sigma(T) = iota_k^{s+l-k}(T^{*BC})` with `l` the minimal level of `T^{*BC}`.
pub fn sigma(t: &TwoRowTableau, s: usize) -> Result<TwoRowTableau> {
    let k = t.width();
    if k > s {
        return Err(Error::InvalidElement(format!("{t} has more than {s} columns")));
    }
    let star = star_bc(t)?;
    let l = min_level(&star);
    let target = s + l - k;
    iota(&star, target).ok_or_else(|| Error::Undefined(format!("sigma({t}): iota to level {target}")))
}

/// Memoizing evaluator of `sigma` for a fixed `B^{2,s}`.
#[derive(Debug, Default)]
pub struct SigmaCache {
    map: Mutex<HashMap<TwoRowTableau, TwoRowTableau>>,
}

impl SigmaCache {
    pub fn get(&self, t: &TwoRowTableau, s: usize) -> TwoRowTableau {
        if let Some(x) = self.map.lock().unwrap().get(t) {
            return x.clone();
        }
        let x = sigma(t, s).unwrap_or_else(|e| panic!("sigma failed on {t}: {e}"));
        let mut m = self.map.lock().unwrap();
        m.insert(x.clone(), t.clone());
        m.insert(t.clone(), x.clone());
        x
    }
}

/// The null configuration `N_k`: top row `1^{k/2} 2^{k mod 2} 2^{k/2}`, bottom row
/// `2̄^{k/2} 2̄^{k mod 2} 1̄^{k/2}` (integer division).
pub fn null_configuration(n: usize, k: usize) -> TwoRowTableau {
    let h = k / 2;
    let r = k % 2;
    let mut cols = Vec::new();
    for j in 0..k {
        let top = if j < h { 1 } else { 2 };
        let bot = if j < h + r { -2 } else { -1 };
        cols.push([lt(n, top), lt(n, bot)]);
    }
    TwoRowTableau::from_cols_unchecked(n, cols)
}
