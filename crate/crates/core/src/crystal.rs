//! Abstract crystals, tensor products, affinization and generic crystal-graph tools.
//!
//! Tensor products follow the rule where `e_i` acts on the left factor when
//! `phi_i(b1) >= eps_i(b2)` and `f_i` acts on the left factor when
//! `phi_i(b1) > eps_i(b2)`.

use std::collections::{HashMap, VecDeque};
use std::fmt::Debug;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::weight::{CartanType, Weight};

pub trait Crystal {
    type Elem: Clone + Eq + Hash + Ord + Debug;

    fn cartan(&self) -> CartanType;
    fn e(&self, i: usize, b: &Self::Elem) -> Option<Self::Elem>;
    fn f(&self, i: usize, b: &Self::Elem) -> Option<Self::Elem>;
    fn eps(&self, i: usize, b: &Self::Elem) -> i64;
    fn phi(&self, i: usize, b: &Self::Elem) -> i64;
    fn wt(&self, b: &Self::Elem) -> Weight;

    fn is_highest_weight(&self, b: &Self::Elem, indices: &[usize]) -> bool {
        indices.iter().all(|&i| self.e(i, b).is_none())
    }
}

pub trait FiniteCrystal: Crystal {
    fn elements(&self) -> Vec<Self::Elem>;
}

/// Apply a sequence of raising operators, returning the element together with
/// the indices used (in order of application) once no `e_i` with `i` in `indices` applies.
pub fn raise_to_highest_weight<C: Crystal>(
    c: &C,
    b: &C::Elem,
    indices: &[usize],
) -> (C::Elem, Vec<usize>) {
    let mut cur = b.clone();
    let mut path = Vec::new();
    'outer: loop {
        for &i in indices {
            if let Some(next) = c.e(i, &cur) {
                cur = next;
                path.push(i);
                continue 'outer;
            }
        }
        return (cur, path);
    }
}

/// Undo a raising path by applying the `f_i` in reverse order.
pub fn lower_along<C: Crystal>(c: &C, b: &C::Elem, path: &[usize]) -> Option<C::Elem> {
    let mut cur = b.clone();
    for &i in path.iter().rev() {
        cur = c.f(i, &cur)?;
    }
    Some(cur)
}

pub struct Tensor2<A, B> {
    pub left: A,
    pub right: B,
}

impl<A: Crystal, B: Crystal> Tensor2<A, B> {
    pub fn new(left: A, right: B) -> Self {
        assert_eq!(left.cartan(), right.cartan());
        Tensor2 { left, right }
    }
}

impl<A: Crystal, B: Crystal> Crystal for Tensor2<A, B> {
    type Elem = (A::Elem, B::Elem);

    fn cartan(&self) -> CartanType {
        self.left.cartan()
    }

    fn e(&self, i: usize, (b1, b2): &Self::Elem) -> Option<Self::Elem> {
        if self.left.phi(i, b1) >= self.right.eps(i, b2) {
            self.left.e(i, b1).map(|x| (x, b2.clone()))
        } else {
            self.right.e(i, b2).map(|y| (b1.clone(), y))
        }
    }

    fn f(&self, i: usize, (b1, b2): &Self::Elem) -> Option<Self::Elem> {
        if self.left.phi(i, b1) > self.right.eps(i, b2) {
            self.left.f(i, b1).map(|x| (x, b2.clone()))
        } else {
            self.right.f(i, b2).map(|y| (b1.clone(), y))
        }
    }

    fn eps(&self, i: usize, (b1, b2): &Self::Elem) -> i64 {
        let e1 = self.left.eps(i, b1);
        let e2 = self.right.eps(i, b2);
        e1.max(e2 - self.left.wt(b1).pairing(i))
    }

    fn phi(&self, i: usize, (b1, b2): &Self::Elem) -> i64 {
        let p1 = self.left.phi(i, b1);
        let p2 = self.right.phi(i, b2);
        p2.max(p1 + self.right.wt(b2).pairing(i))
    }

    fn wt(&self, (b1, b2): &Self::Elem) -> Weight {
        &self.left.wt(b1) + &self.right.wt(b2)
    }
}

impl<A: FiniteCrystal, B: FiniteCrystal> FiniteCrystal for Tensor2<A, B> {
    fn elements(&self) -> Vec<Self::Elem> {
        let r = self.right.elements();
        let mut out = Vec::new();
        for a in self.left.elements() {
            for b in &r {
                out.push((a.clone(), b.clone()));
            }
        }
        out
    }
}

/// Position acted on by `e_i` in a tensor word, given per-factor `(eps, phi)`.
/// Returns `None` when `eps` of the whole word is zero.
pub fn word_e_position(data: &[(i64, i64)]) -> Option<usize> {
    // Prefix eps/phi of b_1 (x) ... (x) b_j, then descend from the right.
    let k = data.len();
    if k == 0 {
        return None;
    }
    let mut prefix_phi = vec![0i64; k];
    let mut prefix_eps = vec![0i64; k];
    let (e0, p0) = data[0];
    prefix_phi[0] = p0;
    prefix_eps[0] = e0;
    for j in 1..k {
        let (e, p) = data[j];
        let wt = p - e;
        let pe = prefix_eps[j - 1];
        let pp = prefix_phi[j - 1];
        prefix_eps[j] = pe.max(e - (pp - pe));
        prefix_phi[j] = p.max(pp + wt);
    }
    if prefix_eps[k - 1] == 0 {
        return None;
    }
    // Descend: the word is P (x) b_j with P the prefix; act on P if phi(P) >= eps(b_j).
    let mut j = k - 1;
    loop {
        if j == 0 {
            return Some(0);
        }
        if prefix_phi[j - 1] >= data[j].0 {
            j -= 1;
        } else {
            return Some(j);
        }
    }
}

/// Position acted on by `f_i` in a tensor word. Returns `None` when `phi` of the word is zero.
pub fn word_f_position(data: &[(i64, i64)]) -> Option<usize> {
    let k = data.len();
    if k == 0 {
        return None;
    }
    let mut prefix_phi = vec![0i64; k];
    let mut prefix_eps = vec![0i64; k];
    prefix_eps[0] = data[0].0;
    prefix_phi[0] = data[0].1;
    for j in 1..k {
        let (e, p) = data[j];
        let pe = prefix_eps[j - 1];
        let pp = prefix_phi[j - 1];
        prefix_eps[j] = pe.max(e - (pp - pe));
        prefix_phi[j] = p.max(pp + (p - e));
    }
    if prefix_phi[k - 1] == 0 {
        return None;
    }
    let mut j = k - 1;
    loop {
        if j == 0 {
            return Some(0);
        }
        if prefix_phi[j - 1] > data[j].0 {
            j -= 1;
        } else {
            return Some(j);
        }
    }
}

/// `(eps, phi)` of a whole tensor word.
pub fn word_eps_phi(data: &[(i64, i64)]) -> (i64, i64) {
    let mut acc: Option<(i64, i64)> = None;
    for &(e, p) in data {
        acc = Some(match acc {
            None => (e, p),
            Some((pe, pp)) => (pe.max(e - (pp - pe)), p.max(pp + (p - e))),
        });
    }
    acc.unwrap_or((0, 0))
}

/// Homogeneous tensor power `C^{(x) k}` with elements stored left to right.
pub struct TensorPower<C> {
    pub base: C,
    pub k: usize,
}

impl<C: Crystal> TensorPower<C> {
    fn data(&self, i: usize, w: &[C::Elem]) -> Vec<(i64, i64)> {
        w.iter().map(|b| (self.base.eps(i, b), self.base.phi(i, b))).collect()
    }
}

impl<C: Crystal> Crystal for TensorPower<C> {
    type Elem = Vec<C::Elem>;

    fn cartan(&self) -> CartanType {
        self.base.cartan()
    }

    fn e(&self, i: usize, w: &Self::Elem) -> Option<Self::Elem> {
        let j = word_e_position(&self.data(i, w))?;
        let mut out = w.clone();
        out[j] = self.base.e(i, &w[j])?;
        Some(out)
    }

    fn f(&self, i: usize, w: &Self::Elem) -> Option<Self::Elem> {
        let j = word_f_position(&self.data(i, w))?;
        let mut out = w.clone();
        out[j] = self.base.f(i, &w[j])?;
        Some(out)
    }

    fn eps(&self, i: usize, w: &Self::Elem) -> i64 {
        word_eps_phi(&self.data(i, w)).0
    }

    fn phi(&self, i: usize, w: &Self::Elem) -> i64 {
        word_eps_phi(&self.data(i, w)).1
    }

    fn wt(&self, w: &Self::Elem) -> Weight {
        let mut acc = Weight::zero(self.base.cartan());
        for b in w {
            acc += &self.base.wt(b);
        }
        acc
    }
}

impl<C: FiniteCrystal> FiniteCrystal for TensorPower<C> {
    fn elements(&self) -> Vec<Self::Elem> {
        let base = self.base.elements();
        let mut out: Vec<Vec<C::Elem>> = vec![Vec::new()];
        for _ in 0..self.k {
            let mut next = Vec::with_capacity(out.len() * base.len());
            for w in &out {
                for b in &base {
                    let mut v = w.clone();
                    v.push(b.clone());
                    next.push(v);
                }
            }
            out = next;
        }
        out
    }
}

/// Element `z^mode b` of an affinization.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Affine<E> {
    pub mode: i64,
    pub elem: E,
}

/// Affinization: `e_0` raises the mode by one and `f_0` lowers it.
pub struct Affinization<C> {
    pub base: C,
}

impl<C: Crystal> Crystal for Affinization<C> {
    type Elem = Affine<C::Elem>;

    fn cartan(&self) -> CartanType {
        self.base.cartan()
    }

    fn e(&self, i: usize, b: &Self::Elem) -> Option<Self::Elem> {
        self.base.e(i, &b.elem).map(|elem| Affine {
            mode: b.mode + if i == 0 { 1 } else { 0 },
            elem,
        })
    }

    fn f(&self, i: usize, b: &Self::Elem) -> Option<Self::Elem> {
        self.base.f(i, &b.elem).map(|elem| Affine {
            mode: b.mode - if i == 0 { 1 } else { 0 },
            elem,
        })
    }

    fn eps(&self, i: usize, b: &Self::Elem) -> i64 {
        self.base.eps(i, &b.elem)
    }

    fn phi(&self, i: usize, b: &Self::Elem) -> i64 {
        self.base.phi(i, &b.elem)
    }

    fn wt(&self, b: &Self::Elem) -> Weight {
        self.base.wt(&b.elem)
    }
}

#[derive(Clone, Debug, Default)]
pub struct AxiomReport {
    pub elements: usize,
    pub checks: usize,
    pub violations: Vec<String>,
}

impl AxiomReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check the crystal axioms for every element and every index in `indices`:
/// weight compatibility of `phi - eps`, the weight shifts of `e_i`/`f_i`, the
/// shifts of `eps_i`/`phi_i`, mutual inverseness of `e_i` and `f_i`, and that
/// `eps_i`/`phi_i` are the string lengths (so never `-infinity`).
pub fn check_axioms<C: FiniteCrystal>(c: &C, indices: &[usize]) -> AxiomReport {
    let ct = c.cartan();
    let elems = c.elements();
    let mut rep = AxiomReport {
        elements: elems.len(),
        ..Default::default()
    };
    let fail = |rep: &mut AxiomReport, msg: String| {
        if rep.violations.len() < 50 {
            rep.violations.push(msg);
        }
    };
    for b in &elems {
        let w = c.wt(b);
        for &i in indices {
            rep.checks += 1;
            let (e, p) = (c.eps(i, b), c.phi(i, b));
            if p != e + w.pairing(i) {
                fail(&mut rep, format!("phi_{i} != eps_{i} + <h_{i},wt> at {b:?}"));
            }
            if e < 0 || p < 0 {
                fail(&mut rep, format!("negative eps/phi at {b:?} for i={i}"));
            }
            let alpha = ct.simple_root(i);
            if let Some(x) = c.e(i, b) {
                if c.wt(&x) != &w + &alpha {
                    fail(&mut rep, format!("wt(e_{i} b) != wt(b) + alpha_{i} at {b:?}"));
                }
                if c.eps(i, &x) != e - 1 || c.phi(i, &x) != p + 1 {
                    fail(&mut rep, format!("eps/phi shift wrong for e_{i} at {b:?}"));
                }
                if c.f(i, &x).as_ref() != Some(b) {
                    fail(&mut rep, format!("f_{i} e_{i} b != b at {b:?}"));
                }
            } else if e != 0 {
                fail(&mut rep, format!("e_{i} b undefined but eps_{i} = {e} at {b:?}"));
            }
            if let Some(y) = c.f(i, b) {
                if c.wt(&y) != &w - &alpha {
                    fail(&mut rep, format!("wt(f_{i} b) != wt(b) - alpha_{i} at {b:?}"));
                }
                if c.eps(i, &y) != e + 1 || c.phi(i, &y) != p - 1 {
                    fail(&mut rep, format!("eps/phi shift wrong for f_{i} at {b:?}"));
                }
                if c.e(i, &y).as_ref() != Some(b) {
                    fail(&mut rep, format!("e_{i} f_{i} b != b at {b:?}"));
                }
            } else if p != 0 {
                fail(&mut rep, format!("f_{i} b undefined but phi_{i} = {p} at {b:?}"));
            }
            // String lengths.
            let mut len = 0;
            let mut cur = b.clone();
            while let Some(x) = c.e(i, &cur) {
                cur = x;
                len += 1;
                if len > 10_000 {
                    break;
                }
            }
            if len != e {
                fail(&mut rep, format!("eps_{i} = {e} but the e-string has length {len} at {b:?}"));
            }
        }
    }
    rep
}

/// A finite crystal graph stored with dense indices.
#[derive(Clone, Debug)]
pub struct CrystalGraph<E> {
    pub nodes: Vec<E>,
    pub index: HashMap<E, usize>,
    /// `f_arrow[v][k]` is the target of `f_{indices[k]}` from `v`.
    pub f_arrow: Vec<Vec<Option<usize>>>,
    pub e_arrow: Vec<Vec<Option<usize>>>,
    pub indices: Vec<usize>,
}

/// Breadth-first enumeration of the connected component of `seed` using
/// `e_i` and `f_i` for `i` in `indices`.
pub fn enumerate_component<C: Crystal>(
    c: &C,
    seed: &C::Elem,
    indices: &[usize],
    budget: usize,
) -> Result<CrystalGraph<C::Elem>> {
    let mut nodes = vec![seed.clone()];
    let mut index = HashMap::new();
    index.insert(seed.clone(), 0usize);
    let mut queue = VecDeque::from([0usize]);
    let mut f_arrow: Vec<Vec<Option<usize>>> = vec![vec![None; indices.len()]];
    let mut e_arrow: Vec<Vec<Option<usize>>> = vec![vec![None; indices.len()]];
    while let Some(v) = queue.pop_front() {
        let b = nodes[v].clone();
        for (k, &i) in indices.iter().enumerate() {
            for up in [false, true] {
                let next = if up { c.e(i, &b) } else { c.f(i, &b) };
                let Some(x) = next else { continue };
                let w = match index.get(&x) {
                    Some(&w) => w,
                    None => {
                        if nodes.len() >= budget {
                            return Err(Error::Budget(budget));
                        }
                        let w = nodes.len();
                        nodes.push(x.clone());
                        index.insert(x, w);
                        f_arrow.push(vec![None; indices.len()]);
                        e_arrow.push(vec![None; indices.len()]);
                        queue.push_back(w);
                        w
                    }
                };
                if up {
                    e_arrow[v][k] = Some(w);
                } else {
                    f_arrow[v][k] = Some(w);
                }
            }
        }
    }
    Ok(CrystalGraph {
        nodes,
        index,
        f_arrow,
        e_arrow,
        indices: indices.to_vec(),
    })
}

fn signature<C: Crystal>(c: &C, b: &C::Elem, indices: &[usize]) -> (Weight, Vec<i64>, Vec<i64>) {
    (
        c.wt(b),
        indices.iter().map(|&i| c.eps(i, b)).collect(),
        indices.iter().map(|&i| c.phi(i, b)).collect(),
    )
}

/// The unique crystal isomorphism between the component of `seed_left` in `a`
/// and a component of `b`, found by trying every element of `b_graph` whose
/// weight and `eps`/`phi` data match the seed.
pub fn find_isomorphism<A: Crystal, B: Crystal>(
    a: &A,
    left: &CrystalGraph<A::Elem>,
    b: &B,
    right: &CrystalGraph<B::Elem>,
) -> Result<HashMap<A::Elem, B::Elem>> {
    let indices = &left.indices;
    if left.nodes.len() != right.nodes.len() {
        return Err(Error::NoIsomorphism(format!(
            "sizes differ: {} vs {}",
            left.nodes.len(),
            right.nodes.len()
        )));
    }
    let lsig: Vec<_> = left.nodes.iter().map(|x| signature(a, x, indices)).collect();
    let rsig: Vec<_> = right.nodes.iter().map(|x| signature(b, x, indices)).collect();
    // Seed: rarest signature on the left.
    let mut counts: HashMap<&(Weight, Vec<i64>, Vec<i64>), usize> = HashMap::new();
    for s in &rsig {
        *counts.entry(s).or_default() += 1;
    }
    let seed = (0..left.nodes.len())
        .min_by_key(|&v| counts.get(&lsig[v]).copied().unwrap_or(0))
        .unwrap_or(0);
    let candidates: Vec<usize> = (0..right.nodes.len()).filter(|&w| rsig[w] == lsig[seed]).collect();
    let mut found: Option<Vec<usize>> = None;
    let mut successes = 0;
    for &cand in &candidates {
        if let Some(map) = try_extend(left, right, &lsig, &rsig, seed, cand) {
            successes += 1;
            if found.is_none() {
                found = Some(map);
            }
        }
    }
    match (successes, found) {
        (1, Some(map)) => Ok(map
            .into_iter()
            .enumerate()
            .map(|(v, w)| (left.nodes[v].clone(), right.nodes[w].clone()))
            .collect()),
        (0, _) => Err(Error::NoIsomorphism(format!(
            "{} candidate images for the seed, none extends",
            candidates.len()
        ))),
        (k, _) => Err(Error::AmbiguousIsomorphism(k)),
    }
}

fn try_extend<S: PartialEq, E1, E2>(
    left: &CrystalGraph<E1>,
    right: &CrystalGraph<E2>,
    lsig: &[S],
    rsig: &[S],
    seed: usize,
    cand: usize,
) -> Option<Vec<usize>> {
    const UNSET: usize = usize::MAX;
    let mut map = vec![UNSET; left.nodes.len()];
    let mut inv = vec![UNSET; right.nodes.len()];
    map[seed] = cand;
    inv[cand] = seed;
    let mut queue = VecDeque::from([seed]);
    while let Some(v) = queue.pop_front() {
        let w = map[v];
        for k in 0..left.indices.len() {
            for (la, ra) in [
                (left.f_arrow[v][k], right.f_arrow[w][k]),
                (left.e_arrow[v][k], right.e_arrow[w][k]),
            ] {
                match (la, ra) {
                    (None, None) => {}
                    (Some(x), Some(y)) => {
                        if map[x] == UNSET {
                            if inv[y] != UNSET || lsig[x] != rsig[y] {
                                return None;
                            }
                            map[x] = y;
                            inv[y] = x;
                            queue.push_back(x);
                        } else if map[x] != y {
                            return None;
                        }
                    }
                    _ => return None,
                }
            }
        }
    }
    if map.contains(&UNSET) {
        return None;
    }
    Some(map)
}
