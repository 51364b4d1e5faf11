//! Exhaustive and sampled verification suites, shared by the command line tool and
//! the acceptance tests.

use std::collections::HashMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::crystal::{check_axioms, FiniteCrystal};
use crate::error::{Error, Result};
use crate::insertion::{pq_to_word, word_to_pq};
use crate::kr_b2::KrB2;
use crate::letter::{Letter, LetterCrystal};
use crate::one_row::{OneRow, OneRowCrystal};
use crate::oracle::SigmaOracle;
use crate::rmatrix::{
    b2s_b21_highest_weight_vectors, brute_force_r, energy_from_zero_arrows, h_b2s_b21_hw, r_b11_b21, r_b2s_b21_hw, r_one_row,
    yang_baxter_violations, Tagged, RB2,
};
use crate::sca::{self, detect_solitons, Automaton, ScaState, SolitonLabel};
use crate::tableau::TwoRowTableau;
use crate::weight::CartanType;

#[derive(Clone, Debug, Default)]
pub struct SuiteReport {
    pub name: String,
    pub checked: usize,
    pub failed: usize,
    /// At most ten failure descriptions.
    pub examples: Vec<String>,
}

impl SuiteReport {
    pub fn new(name: impl Into<String>) -> Self {
        SuiteReport { name: name.into(), ..Default::default() }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }

    /// Record one check.
    pub fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.examples.len() < 10 {
                self.examples.push(what());
            }
        }
    }

    pub fn absorb(&mut self, other: SuiteReport) {
        self.checked += other.checked;
        self.failed += other.failed;
        for e in other.examples {
            if self.examples.len() < 10 {
                self.examples.push(format!("[{}] {e}", other.name));
            }
        }
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} checks, {} failures", self.name, self.checked, self.failed)?;
        for e in &self.examples {
            write!(f, "\n  {e}")?;
        }
        Ok(())
    }
}

fn caps(n: usize, s: usize) -> Result<()> {
    if !(4..=6).contains(&n) || s == 0 || s > 3 {
        return Err(Error::Precondition(format!("exhaustive suites need 4 <= n <= 6 and 1 <= s <= 3, got n={n} s={s}")));
    }
    Ok(())
}

/// Crystal axioms on `B^{2,s}` and `B^{1,s}`, all nodes `0..=n`.
pub fn axioms(n: usize, s: usize) -> Result<SuiteReport> {
    caps(n, s)?;
    let mut rep = SuiteReport::new(format!("axioms n={n} s={s}"));
    let idx = CartanType::D(n).nodes();
    for (name, r) in [
        ("B^{2,s}", check_axioms(&KrB2::new(n, s)?, &idx)),
        ("B^{1,s}", check_axioms(&OneRowCrystal { n, s }, &idx)),
    ] {
        rep.checked += r.checks;
        rep.failed += r.violations.len();
        for v in r.violations.into_iter().take(10 - rep.examples.len().min(10)) {
            rep.examples.push(format!("{name}: {v}"));
        }
    }
    Ok(rep)
}

/// The explicit `sigma` against its characterisation, and `sigma^2 = 1`.
pub fn sigma(n: usize, s: usize) -> Result<SuiteReport> {
    caps(n, s)?;
    let mut rep = SuiteReport::new(format!("sigma n={n} s={s}"));
    let kr = KrB2::new(n, s)?;
    let oracle = SigmaOracle::new(n, s)?;
    for t in kr.elements() {
        let x = kr.sigma(&t);
        rep.check(x == oracle.sigma(&t), || format!("sigma({t}) = {x}, expected {}", oracle.sigma(&t)));
        rep.check(kr.sigma(&x) == t, || format!("sigma is not an involution at {t}"));
    }
    Ok(rep)
}

/// `pq_to_word(word_to_pq(w)) = w` for every word of length at most `max_len`.
pub fn insertion(n: usize, max_len: usize) -> Result<SuiteReport> {
    if !(4..=6).contains(&n) || max_len > 5 {
        return Err(Error::Precondition(format!("insertion suite caps: 4 <= n <= 6, length <= 5 (got n={n}, {max_len})")));
    }
    let mut rep = SuiteReport::new(format!("insertion n={n} length<={max_len}"));
    let letters = Letter::all(n);
    let mut words: Vec<Vec<Letter>> = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(words.len() * letters.len());
        for w in &words {
            for &l in &letters {
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        for w in &next {
            let back = word_to_pq(n, w).and_then(|(p, q)| pq_to_word(&p, &q));
            rep.check(back.as_ref() == Ok(w), || format!("{w:?} -> {back:?}"));
        }
        words = next;
    }
    Ok(rep)
}

/// Highest weight table of `B^{2,s} ⊗ B^{2,1}` and its energies against the
/// graph-isomorphism R and the 0-arrow energy.
pub fn rmatrix_highest_weight_table(n: usize, s: usize) -> Result<SuiteReport> {
    caps(n, s)?;
    let mut rep = SuiteReport::new(format!("R highest weight table n={n} s={s}"));
    let a = KrB2::new(n, s)?;
    let b = KrB2::new(n, 1)?;
    let bf = brute_force_r(&a, &b, &a.highest(), &b.highest())?;
    let h = energy_from_zero_arrows(&a, &b, |x, y| bf[&(x.clone(), y.clone())].clone(), (a.highest(), b.highest()), 0)?;
    for (t, tp) in b2s_b21_highest_weight_vectors(n, s) {
        let key = (t.clone(), tp.clone());
        let got = r_b2s_b21_hw(n, s, t.width(), &tp);
        rep.check(got.as_ref() == Ok(&bf[&key]), || format!("R(u_{} ⊗ {tp}) = {got:?}, expected {:?}", t.width(), bf[&key]));
        let e = h_b2s_b21_hw(n, s, t.width(), &tp);
        rep.check(e == Ok(h[&key]), || format!("H(u_{} ⊗ {tp}) = {e:?}, expected {}", t.width(), h[&key]));
    }
    Ok(rep)
}

/// Hand-coded R-matrices against brute force on every element: `B^{2,s} ⊗ B^{2,1}`
/// (with energy and inverse), `B^{1,1} ⊗ B^{2,1}` and `B^{1,s} ⊗ B^{1,1}` both ways.
pub fn rmatrix(n: usize, s: usize) -> Result<SuiteReport> {
    caps(n, s)?;
    let mut rep = SuiteReport::new(format!("rmatrix n={n} s={s}"));
    rep.absorb(rmatrix_highest_weight_table(n, s)?);

    let a = KrB2::new(n, s)?;
    let b = KrB2::new(n, 1)?;
    let bf = brute_force_r(&a, &b, &a.highest(), &b.highest())?;
    let h = energy_from_zero_arrows(&a, &b, |x, y| bf[&(x.clone(), y.clone())].clone(), (a.highest(), b.highest()), 0)?;
    let r = RB2::new(n, s)?;
    for ((t, tp), img) in &bf {
        let got = r.apply_with_energy(t, tp);
        rep.check(matches!(&got, Ok((x, y, e)) if (x, y) == (&img.0, &img.1) && *e == h[&(t.clone(), tp.clone())]), || {
            format!("B^{{2,{s}}}⊗B^{{2,1}}: {t} ⊗ {tp} -> {got:?}, expected {img:?}")
        });
        let back = r.inverse(&img.0, &img.1);
        rep.check(back == Ok((t.clone(), tp.clone())), || format!("inverse at {:?}", img));
    }

    let l = LetterCrystal { n };
    let bf = brute_force_r(&l, &b, &Letter::of(n, 1), &b.highest())?;
    for ((x, t), img) in &bf {
        let got = r_b11_b21(*x, t);
        rep.check(got.as_ref() == Ok(img), || format!("B^{{1,1}}⊗B^{{2,1}}: {x} ⊗ {t} -> {got:?}, expected {img:?}"));
    }

    for (p, q) in [(s, 1), (1, s)] {
        let (ca, cb) = (OneRowCrystal { n, s: p }, OneRowCrystal { n, s: q });
        let (ha, hb) = (OneRow::highest(n, p), OneRow::highest(n, q));
        let bf = brute_force_r(&ca, &cb, &ha, &hb)?;
        let h = energy_from_zero_arrows(&ca, &cb, |x, y| bf[&(x.clone(), y.clone())].clone(), (ha, hb), 0)?;
        for ((x, y), img) in &bf {
            let got = r_one_row(x, y);
            let want = (img.0.clone(), img.1.clone(), h[&(x.clone(), y.clone())]);
            rep.check(got.as_ref() == Ok(&want), || format!("B^{{1,{p}}}⊗B^{{1,{q}}}: {x} ⊗ {y} -> {got:?}, expected {want:?}"));
        }
    }
    Ok(rep)
}

/// Tabulate a bijection `A ⊗ B -> B ⊗ A` and its inverse.
fn tabulate<E: Clone + Eq + std::hash::Hash>(
    pairs: impl IntoIterator<Item = (E, E)>,
    f: impl Fn(&E, &E) -> Result<(E, E)>,
) -> Result<(HashMap<(E, E), (E, E)>, HashMap<(E, E), (E, E)>)> {
    let mut fwd = HashMap::new();
    let mut inv = HashMap::new();
    for (x, y) in pairs {
        let img = f(&x, &y)?;
        inv.insert(img.clone(), (x.clone(), y.clone()));
        fwd.insert((x, y), img);
    }
    Ok((fwd, inv))
}

fn ybe_r<'a, E: Clone + Eq + std::hash::Hash + fmt::Debug>(
    big: usize,
    fwd: &'a HashMap<(E, E), (E, E)>,
    inv: &'a HashMap<(E, E), (E, E)>,
) -> impl Fn(&Tagged<E>, &Tagged<E>) -> Result<(Tagged<E>, Tagged<E>)> + 'a {
    move |x, y| {
        let key = (x.1.clone(), y.1.clone());
        let missing = || Error::Undefined(format!("no R image for {x:?} ⊗ {y:?}"));
        match (x.0 == big, y.0 == big) {
            (true, false) => fwd.get(&key).map(|(a, b)| ((y.0, a.clone()), (x.0, b.clone()))).ok_or_else(missing),
            (false, true) => inv.get(&key).map(|(a, b)| ((y.0, a.clone()), (x.0, b.clone()))).ok_or_else(missing),
            _ => Ok((x.clone(), y.clone())),
        }
    }
}

fn triples3<E: Clone>(a: &[E], b: &[E], c: &[E], tags: [usize; 3]) -> Vec<[Tagged<E>; 3]> {
    let mut out = Vec::with_capacity(a.len() * b.len() * c.len());
    for x in a {
        for y in b {
            for z in c {
                out.push([(tags[0], x.clone()), (tags[1], y.clone()), (tags[2], z.clone())]);
            }
        }
    }
    out
}

/// Yang-Baxter on `B^{2,2} ⊗ B^{2,1} ⊗ B^{2,1}` and `B^{1,1} ⊗ B^{1,1} ⊗ B^{1,2}`, exhaustively.
pub fn yang_baxter(n: usize) -> Result<SuiteReport> {
    caps(n, 1)?;
    let mut rep = SuiteReport::new(format!("yang-baxter n={n}"));

    let b22 = KrB2::new(n, 2)?.elements();
    let b21 = KrB2::new(n, 1)?.elements();
    let r = RB2::new(n, 2)?;
    let pairs = b22.iter().flat_map(|x| b21.iter().map(move |y| (x.clone(), y.clone())));
    let (fwd, inv) = tabulate(pairs, |x, y| r.apply(x, y))?;
    let triples = triples3(&b22, &b21, &b21, [2, 1, 1]);
    let (c, bad, ex) = yang_baxter_violations::<TwoRowTableau, _>(triples, ybe_r(2, &fwd, &inv))?;
    rep.checked += c;
    rep.failed += bad;
    rep.examples.extend(ex);

    let b11 = OneRowCrystal { n, s: 1 }.elements();
    let b12 = OneRowCrystal { n, s: 2 }.elements();
    let pairs = b12.iter().flat_map(|x| b11.iter().map(move |y| (x.clone(), y.clone())));
    let (fwd, inv) = tabulate(pairs, |x, y| r_one_row(x, y).map(|(a, b, _)| (a, b)))?;
    let triples = triples3(&b11, &b11, &b12, [1, 1, 2]);
    let (c, bad, ex) = yang_baxter_violations::<OneRow, _>(triples, ybe_r(2, &fwd, &inv))?;
    rep.checked += c;
    rep.failed += bad;
    rep.examples.extend(ex);
    Ok(rep)
}

/// `E_1(p) = 1` exactly for single-soliton states, over every state of length `len`
/// with at most two non-vacuum cells. The last cell of a state is vacuum.
pub fn energy_characterisation(n: usize, len: usize) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(format!("E_1 = 1 characterisation n={n} L={len}"));
    let a = Automaton::new(n)?;
    let u = sca::vacuum_cell(n);
    let others: Vec<TwoRowTableau> = sca::all_cells(n)?.into_iter().filter(|c| *c != u).collect();
    let mut run = |p: ScaState| -> Result<()> {
        let e = a.state_energy(&p, 1)?;
        let one = matches!(detect_solitons(&p).as_deref(), Ok([_]));
        rep.check((e == 1) == one, || format!("E_1 = {e} but single soliton = {one} for {p:?}"));
        Ok(())
    };
    run(ScaState::vacuum(n, len))?;
    for i in 0..len - 1 {
        for x in &others {
            let mut p = ScaState::vacuum(n, len);
            p.cells[i] = x.clone();
            run(p)?;
            for j in i + 1..len - 1 {
                for y in &others {
                    let mut p = ScaState::vacuum(n, len);
                    p.cells[i] = x.clone();
                    p.cells[j] = y.clone();
                    run(p)?;
                }
            }
        }
    }
    Ok(rep)
}

/// A length-`s` soliton under `T_k` advances `min(k, s)` cells per step and keeps its label;
/// `E_k` equals `min(k, s)`.
pub fn soliton_speed(n: usize, s: usize, carriers: &[usize], steps: usize) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(format!("one-soliton speed n={n} s={s}"));
    let a = Automaton::new(n)?;
    for (idx, l) in SolitonLabel::all(n, s)?.into_iter().enumerate() {
        if idx % 5 != 0 {
            continue;
        }
        for &k in carriers {
            let mut p = sca::soliton_state(n, std::slice::from_ref(&l), &[1], 1 + (steps + 1) * s)?;
            for t in 1..=steps {
                let e = a.state_energy(&p, k)?;
                rep.check(e == k.min(s) as i64, || format!("E_{k}({l}) = {e}"));
                p = a.evolve(&p, k)?;
                let d = detect_solitons(&p)?;
                let ok = d.len() == 1 && d[0].position == 1 + t * k.min(s) && d[0].label == l;
                rep.check(ok, || format!("{l} under T_{k} at t={t}: {d:?}"));
            }
        }
    }
    Ok(rep)
}

/// `i_s` is a bijection onto soliton patterns.
pub fn soliton_labels(n: usize, s_max: usize) -> Result<SuiteReport> {
    caps(n, s_max)?;
    let mut rep = SuiteReport::new(format!("soliton labels n={n} s<={s_max}"));
    for s in 1..=s_max {
        for l in SolitonLabel::all(n, s)? {
            let cells = l.cells()?;
            let back = SolitonLabel::from_cells(n, &cells);
            rep.check(back.as_ref() == Some(&l), || format!("{l} -> {cells:?} -> {back:?}"));
        }
    }
    Ok(rep)
}

pub fn solitons(n: usize, s: usize) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(format!("solitons n={n} s={s}"));
    rep.absorb(soliton_labels(n, s)?);
    rep.absorb(energy_characterisation(n, if n == 4 { 8 } else { 6 })?);
    rep.absorb(soliton_speed(n, s, &[1, 2, 3, 4, 5], 5)?);
    Ok(rep)
}

/// Reproduce the bundled scattering trace of rank `n` cell for cell and compare
/// the separated solitons with `R^Aff` of the initial ones.
pub fn scattering(n: usize) -> Result<(SuiteReport, sca::ScatterReport)> {
    let rows = sca::reference_trace(n).ok_or_else(|| Error::Precondition(format!("no reference trace for n={n}")))?;
    let r = sca::reference_carrier(n).expect("carrier for every bundled trace");
    let mut rep = SuiteReport::new(format!("scattering n={n}"));
    let a = Automaton::new(n)?;
    let mut cur = rows[0].clone();
    for (t, want) in rows.iter().enumerate().skip(1) {
        cur = a.evolve(&cur, r)?;
        rep.check(cur == *want, || format!("t={t}: got {cur:?}, expected {want:?}"));
    }
    let sc = a.scatter_experiment(&rows[0], r, 30)?;
    rep.check(sc.matches(), || sc.to_string());
    // the last reference row already shows the separated pair
    let last = detect_solitons(rows.last().expect("non-empty trace"))?;
    let t = rows.len() - 1;
    let seen: Vec<(i64, SolitonLabel)> = last.iter().map(|x| (sca::mode(r, x.len(), t, x.position), x.label.clone())).collect();
    rep.check(seen == sc.predicted.to_vec(), || format!("last reference row {seen:?} vs predicted {:?}", sc.predicted));
    Ok((rep, sc))
}

/// `T_♮ T_r = T_r T_♮`, `T_r e_i = e_i T_r` and `E_r(e_i p) = E_r(p)` for `i ∉ {0, 2}`,
/// on `samples` random states whose evolutions stay inside the lattice.
pub fn properties(n: usize, samples: usize, seed: u64) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(format!("commutation properties n={n} samples={samples}"));
    let a = Automaton::new(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut valid = 0;
    let mut attempts = 0;
    while valid < samples {
        attempts += 1;
        if attempts > 50 * samples {
            return Err(Error::Precondition("could not sample enough valid states".into()));
        }
        let window = rng.gen_range(3..=10);
        let p = sca::sample_state(n, window, 10, 0.45, &mut rng)?;
        let r = rng.gen_range(1..=3);
        let Ok(tp) = a.evolve(&p, r) else { continue };
        let (np, _) = a.evolve_natural(&p)?;
        let Ok(tnp) = a.evolve(&np, r) else { continue };
        valid += 1;
        let ntp = a.evolve_natural(&tp)?.0;
        rep.check(ntp == tnp, || format!("T_nat T_{r} != T_{r} T_nat on {p:?}"));
        let e = a.state_energy(&p, r)?;
        for i in (1..=n).filter(|&i| i != 2) {
            if let Some(q) = p.e(i) {
                let tq = a.evolve(&q, r).ok();
                rep.check(tq == tp.e(i), || format!("T_{r} e_{i} != e_{i} T_{r} on {p:?}"));
                let eq = a.state_energy(&q, r).ok();
                rep.check(eq == Some(e), || format!("E_{r}(e_{i} p) = {eq:?} != {e} on {p:?}"));
            }
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        for rep in [
            axioms(4, 1).unwrap(),
            sigma(4, 2).unwrap(),
            insertion(4, 3).unwrap(),
            rmatrix(4, 1).unwrap(),
            soliton_labels(5, 2).unwrap(),
            energy_characterisation(4, 5).unwrap(),
            properties(4, 30, 1).unwrap(),
        ] {
            assert!(rep.ok(), "{rep}");
            assert!(rep.checked > 0, "{rep}");
        }
    }

    #[test]
    fn yang_baxter_check_detects_a_wrong_r() {
        let n = 4;
        let b11 = OneRowCrystal { n, s: 1 }.elements();
        let b12 = OneRowCrystal { n, s: 2 }.elements();
        let pairs = b12.iter().flat_map(|x| b11.iter().map(move |y| (x.clone(), y.clone())));
        let (fwd, inv) = tabulate(pairs, |x, y| r_one_row(x, y).map(|(a, b, _)| (a, b))).unwrap();
        let good = ybe_r(2, &fwd, &inv);
        // a plain swap on B^{1,1} ⊗ B^{1,1} instead of the identity
        let bad = |x: &Tagged<OneRow>, y: &Tagged<OneRow>| -> Result<(Tagged<OneRow>, Tagged<OneRow>)> {
            if x.0 == y.0 {
                Ok(((x.0, y.1.clone()), (y.0, x.1.clone())))
            } else {
                good(x, y)
            }
        };
        let (checked, violations, _) = yang_baxter_violations(triples3(&b11, &b11, &b12, [1, 1, 2]), bad).unwrap();
        assert!(checked > 0 && violations > 0);
    }

    #[test]
    fn caps_are_enforced() {
        assert!(axioms(4, 9).is_err());
        assert!(insertion(4, 9).is_err());
    }
}
