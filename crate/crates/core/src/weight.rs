//! Affine Cartan data and weights written in the fundamental weight basis.

use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};

/// Untwisted affine type. `D(n)` is `D_n^(1)` (n >= 4), `A(m)` is `A_m^(1)` (m >= 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CartanType {
    D(usize),
    A(usize),
}

impl CartanType {
    pub fn rank(&self) -> usize {
        match *self {
            CartanType::D(n) | CartanType::A(n) => n,
        }
    }

    pub fn num_nodes(&self) -> usize {
        self.rank() + 1
    }

    /// All affine node indices `0..=rank`.
    pub fn nodes(&self) -> Vec<usize> {
        (0..=self.rank()).collect()
    }

    /// Classical node indices `1..=rank`.
    pub fn classical_nodes(&self) -> Vec<usize> {
        (1..=self.rank()).collect()
    }

    fn adjacent(&self, i: usize, j: usize) -> bool {
        if i == j {
            return false;
        }
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        match *self {
            CartanType::D(n) => {
                (a == 0 && b == 2)
                    || (a == 1 && b == 2)
                    || (a >= 2 && b == a + 1 && b < n)
                    || (a == n - 2 && b == n)
            }
            CartanType::A(m) => {
                if m == 1 {
                    true
                } else {
                    b == a + 1 || (a == 0 && b == m)
                }
            }
        }
    }

    /// Entry `a_{ij} = <h_i, alpha_j>` of the generalized Cartan matrix.
    pub fn cartan_entry(&self, i: usize, j: usize) -> i64 {
        if i == j {
            2
        } else if *self == CartanType::A(1) {
            -2
        } else if self.adjacent(i, j) {
            -1
        } else {
            0
        }
    }

    pub fn simple_root(&self, j: usize) -> Weight {
        Weight {
            coeffs: (0..self.num_nodes()).map(|i| self.cartan_entry(i, j)).collect(),
        }
    }

    /// Coefficients of the canonical central element in the coroot basis.
    pub fn level_coefficients(&self) -> Vec<i64> {
        match *self {
            CartanType::D(n) => (0..=n)
                .map(|i| if i <= 1 || i >= n - 1 { 1 } else { 2 })
                .collect(),
            CartanType::A(m) => vec![1; m + 1],
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CartanType::D(n) => write!(f, "D_{n}^(1)"),
            CartanType::A(m) => write!(f, "A_{m}^(1)"),
        }
    }
}

/// A weight `sum_i c_i Lambda_i`; `coeffs[i]` is the pairing with `h_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    pub coeffs: Vec<i64>,
}

impl Weight {
    pub fn zero(ct: CartanType) -> Self {
        Weight {
            coeffs: vec![0; ct.num_nodes()],
        }
    }

    pub fn fundamental(ct: CartanType, i: usize) -> Self {
        let mut w = Self::zero(ct);
        w.coeffs[i] = 1;
        w
    }

    pub fn pairing(&self, i: usize) -> i64 {
        self.coeffs[i]
    }

    pub fn level(&self, ct: CartanType) -> i64 {
        ct.level_coefficients()
            .iter()
            .zip(&self.coeffs)
            .map(|(a, c)| a * c)
            .sum()
    }

    /// Fix the `Lambda_0` coefficient so that the weight has level zero.
    pub fn lift_to_level_zero(mut self, ct: CartanType) -> Self {
        self.coeffs[0] = 0;
        let l = self.level(ct);
        self.coeffs[0] = -l;
        self
    }

    /// Exchange the coefficients of `Lambda_0` and `Lambda_1`.
    pub fn swap01(&self) -> Self {
        let mut w = self.clone();
        w.coeffs.swap(0, 1);
        w
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        Weight {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        &self + &rhs
    }
}

impl AddAssign<&Weight> for Weight {
    fn add_assign(&mut self, rhs: &Weight) {
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        Weight {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, rhs: Weight) -> Weight {
        &self - &rhs
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight {
            coeffs: self.coeffs.into_iter().map(|a| -a).collect(),
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            if !first {
                write!(f, " {} ", if *c > 0 { "+" } else { "-" })?;
            } else if *c < 0 {
                write!(f, "-")?;
            }
            let a = c.abs();
            if a != 1 {
                write!(f, "{a}")?;
            }
            write!(f, "L{i}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
