//! The KR crystal `B^{2,s}` of `D_n^(1)`: classically `B(0) + B(Lambda_2) + ... + B(s Lambda_2)`,
//! with 0-arrows `e_0 = sigma e_1 sigma`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::crystal::{Crystal, FiniteCrystal};
use crate::error::{Error, Result};
use crate::tableau::{enumerate_b_k_lambda2, TwoRowTableau};
use crate::weight::{CartanType, Weight};
use crate::zero_action::SigmaCache;

#[derive(Clone, Debug)]
pub struct KrB2 {
    pub n: usize,
    pub s: usize,
    sigma: Arc<SigmaCache>,
}

impl KrB2 {
    pub fn new(n: usize, s: usize) -> Result<Self> {
        if n < 4 {
            return Err(Error::Precondition(format!("D_n needs n >= 4, got {n}")));
        }
        if s == 0 {
            return Err(Error::Precondition("B^{2,s} needs s >= 1".into()));
        }
        Ok(KrB2 {
            n,
            s,
            sigma: Arc::new(SigmaCache::default()),
        })
    }

    pub fn sigma(&self, t: &TwoRowTableau) -> TwoRowTableau {
        self.sigma.get(t, self.s)
    }

    pub fn contains(&self, t: &TwoRowTableau) -> bool {
        t.n() == self.n && t.width() <= self.s && t.is_valid()
    }

    pub fn highest(&self) -> TwoRowTableau {
        TwoRowTableau::highest(self.n, self.s)
    }

    pub fn parse(&self, text: &str) -> Result<TwoRowTableau> {
        let t = TwoRowTableau::parse(self.n, text)?;
        if t.width() > self.s {
            return Err(Error::InvalidElement(format!("{t} has more than {} columns", self.s)));
        }
        Ok(t)
    }

    /// Level-`k` component sizes, for diagnostics.
    pub fn component_sizes(&self) -> HashMap<usize, usize> {
        (0..=self.s)
            .map(|k| (k, enumerate_b_k_lambda2(self.n, k).len()))
            .collect()
    }
}

impl Crystal for KrB2 {
    type Elem = TwoRowTableau;

    fn cartan(&self) -> CartanType {
        CartanType::D(self.n)
    }

    fn e(&self, i: usize, b: &TwoRowTableau) -> Option<TwoRowTableau> {
        if i == 0 {
            let x = self.sigma(b).e(1)?;
            Some(self.sigma(&x))
        } else {
            b.e(i)
        }
    }

    fn f(&self, i: usize, b: &TwoRowTableau) -> Option<TwoRowTableau> {
        if i == 0 {
            let x = self.sigma(b).f(1)?;
            Some(self.sigma(&x))
        } else {
            b.f(i)
        }
    }

    fn eps(&self, i: usize, b: &TwoRowTableau) -> i64 {
        if i == 0 {
            self.sigma(b).eps(1)
        } else {
            b.eps(i)
        }
    }

    fn phi(&self, i: usize, b: &TwoRowTableau) -> i64 {
        if i == 0 {
            self.sigma(b).phi(1)
        } else {
            b.phi(i)
        }
    }

    fn wt(&self, b: &TwoRowTableau) -> Weight {
        b.weight()
    }
}

impl FiniteCrystal for KrB2 {
    fn elements(&self) -> Vec<TwoRowTableau> {
        (0..=self.s).flat_map(|k| enumerate_b_k_lambda2(self.n, k)).collect()
    }
}

/// Closed form of `f_0^j T` for a single column `T` of `B^{2,s}`.
pub fn f0_power_single_column(t: &TwoRowTableau, s: usize, j: usize) -> Option<TwoRowTableau> {
    use crate::letter::Letter;
    assert_eq!(t.width(), 1);
    let n = t.n();
    let l = |v: i32| Letter::of(n, v);
    let (a, b) = (t.at(1, 1), t.at(2, 1));
    let u = |m: usize| vec![[l(1), l(2)]; m];
    let cols = if b.is(-2) && !a.is(1) && !a.is(2) {
        (1..=s).contains(&j).then(|| [u(j - 1), vec![[l(1), a]]].concat())
    } else if b.is(-1) && !a.is(2) && !a.is(-2) {
        (1..=s).contains(&j).then(|| [u(j - 1), vec![[l(2), a]]].concat())
    } else if a.is(-2) && b.is(-1) {
        (1..=s + 1).contains(&j).then(|| u(j - 1))
    } else {
        (j >= 1 && j < s).then(|| [u(j), vec![[a, b]]].concat())
    }?;
    Some(TwoRowTableau::from_cols_unchecked(n, cols))
}

/// Closed form of `e_0^j T` for a single column `T` of `B^{2,s}`.
pub fn e0_power_single_column(t: &TwoRowTableau, s: usize, j: usize) -> Option<TwoRowTableau> {
    use crate::letter::Letter;
    assert_eq!(t.width(), 1);
    let n = t.n();
    let l = |v: i32| Letter::of(n, v);
    let (a, b) = (t.at(1, 1), t.at(2, 1));
    let d = |m: usize| vec![[l(-2), l(-1)]; m];
    let cols = if a.is(2) && !b.is(-2) && !b.is(-1) {
        (1..=s).contains(&j).then(|| [vec![[b, l(-1)]], d(j - 1)].concat())
    } else if a.is(1) && !b.is(2) && !b.is(-2) {
        (1..=s).contains(&j).then(|| [vec![[b, l(-2)]], d(j - 1)].concat())
    } else if a.is(1) && b.is(2) {
        (1..=s + 1).contains(&j).then(|| d(j - 1))
    } else {
        (j >= 1 && j < s).then(|| [vec![[a, b]], d(j)].concat())
    }?;
    Some(TwoRowTableau::from_cols_unchecked(n, cols))
}
