//! Independent characterizations used to cross-check the explicit formulas.

use std::collections::HashMap;

use crate::crystal::{lower_along, raise_to_highest_weight};
use crate::error::{Error, Result};
use crate::kr_b2::KrB2;
use crate::tableau::{enumerate_b_k_lambda2, TwoRowTableau};
use crate::weight::Weight;

/// `sigma` on `B^{2,s}` determined only by its defining properties: it commutes
/// with `e_i`, `f_i` for `i = 2..n`, exchanges the `Lambda_0` and `Lambda_1`
/// coefficients of the weight, and on `{2..n}`-highest weight elements sends
/// level `k` to level `s + k_min - k`, where `k_min` is the smallest level
/// carrying a `{2..n}`-highest weight element of that weight.
pub struct SigmaOracle {
    pub n: usize,
    pub s: usize,
    hw_image: HashMap<TwoRowTableau, TwoRowTableau>,
}

impl SigmaOracle {
    pub fn new(n: usize, s: usize) -> Result<Self> {
        let mut by_weight: HashMap<Weight, Vec<TwoRowTableau>> = HashMap::new();
        for k in 0..=s {
            for t in enumerate_b_k_lambda2(n, k) {
                if (2..=n).all(|i| t.e(i).is_none()) {
                    by_weight.entry(t.weight()).or_default().push(t);
                }
            }
        }
        let mut hw_image = HashMap::new();
        for (w, list) in &by_weight {
            let kmin = list.iter().map(|t| t.width()).min().unwrap();
            let target_list = by_weight
                .get(&w.swap01())
                .ok_or_else(|| Error::Undefined(format!("no highest weight element of weight {}", w.swap01())))?;
            for t in list {
                let k = t.width();
                let target = s + kmin - k;
                let imgs: Vec<&TwoRowTableau> = target_list.iter().filter(|x| x.width() == target).collect();
                if imgs.len() != 1 {
                    return Err(Error::Undefined(format!(
                        "{} candidates for sigma({t}) at level {target}",
                        imgs.len()
                    )));
                }
                hw_image.insert(t.clone(), imgs[0].clone());
            }
        }
        Ok(SigmaOracle { n, s, hw_image })
    }

    pub fn sigma(&self, t: &TwoRowTableau) -> TwoRowTableau {
        let c = KrB2::new(self.n, self.s).expect("valid parameters");
        let idx: Vec<usize> = (2..=self.n).collect();
        let (hw, path) = raise_to_highest_weight(&c, t, &idx);
        let img = &self.hw_image[&hw];
        lower_along(&c, img, &path).expect("sigma image has the same string structure")
    }

    pub fn e0(&self, t: &TwoRowTableau) -> Option<TwoRowTableau> {
        let x = self.sigma(t).e(1)?;
        Some(self.sigma(&x))
    }
}
