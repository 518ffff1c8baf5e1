use crate::{FormError, DIM};
use std::sync::OnceLock;

struct MaskTables {
    by_degree: Vec<Vec<u16>>,
    index_of: Vec<u16>,
}

fn tables() -> &'static MaskTables {
    static T: OnceLock<MaskTables> = OnceLock::new();
    T.get_or_init(|| {
        let mut by_degree = vec![Vec::new(); DIM + 1];
        let mut index_of = vec![0u16; 1 << DIM];
        for m in 0u16..(1 << DIM) {
            let k = m.count_ones() as usize;
            index_of[m as usize] = by_degree[k].len() as u16;
            by_degree[k].push(m);
        }
        MaskTables { by_degree, index_of }
    })
}

/// Increasing multi-indices of degree `k` as bitmasks, in storage order.
pub fn masks(k: usize) -> &'static [u16] {
    &tables().by_degree[k]
}

pub fn mask_of(indices: &[usize]) -> u16 {
    indices.iter().fold(0u16, |m, &i| m | (1 << i))
}

pub fn indices_of(mask: u16) -> Vec<usize> {
    (0..DIM).filter(|i| mask & (1 << i) != 0).collect()
}

/// Sign of sorting the concatenation `m1 ++ m2` (both increasing).
fn wedge_sign(m1: u16, m2: u16) -> f64 {
    let mut inv = 0u32;
    let mut rest = m2;
    while rest != 0 {
        let j = rest.trailing_zeros();
        inv += (m1 >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    if inv % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// A `k`-form at a point, stored by its components on increasing multi-indices of
/// the chosen basis of 1-forms.
#[derive(Clone, Debug, PartialEq)]
pub struct FormValue {
    degree: usize,
    coeffs: Vec<f64>,
}

impl FormValue {
    pub fn zero(degree: usize) -> Self {
        assert!(degree <= DIM);
        FormValue { degree, coeffs: vec![0.0; masks(degree).len()] }
    }

    pub fn scalar(v: f64) -> Self {
        FormValue { degree: 0, coeffs: vec![v] }
    }

    pub fn one_form(c: &[f64; DIM]) -> Self {
        FormValue { degree: 1, coeffs: c.to_vec() }
    }

    /// `dz^i`.
    pub fn basis1(i: usize) -> Self {
        Self::basis(&[i])
    }

    /// `dz^{i1} ^ ... ^ dz^{ik}` for distinct indices in any order (with sign).
    pub fn basis(indices: &[usize]) -> Self {
        let mut f = Self::zero(indices.len());
        f.add_component(indices, 1.0);
        f
    }

    pub fn from_coeffs(degree: usize, coeffs: Vec<f64>) -> Result<Self, FormError> {
        let want = masks(degree).len();
        if coeffs.len() != want {
            return Err(FormError::DegreeMismatch { expected: want, got: coeffs.len() });
        }
        Ok(FormValue { degree, coeffs })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [f64] {
        &mut self.coeffs
    }

    pub fn get_mask(&self, mask: u16) -> f64 {
        debug_assert_eq!(mask.count_ones() as usize, self.degree);
        self.coeffs[tables().index_of[mask as usize] as usize]
    }

    /// Fully antisymmetric component `F_{i1..ik}`; zero on repeated indices.
    pub fn component(&self, indices: &[usize]) -> f64 {
        match sort_sign(indices) {
            Some((mask, sign)) => sign * self.get_mask(mask),
            None => 0.0,
        }
    }

    /// Adds `v dz^{i1} ^ ... ^ dz^{ik}`.
    pub fn add_component(&mut self, indices: &[usize], v: f64) {
        assert_eq!(indices.len(), self.degree);
        if let Some((mask, sign)) = sort_sign(indices) {
            self.coeffs[tables().index_of[mask as usize] as usize] += sign * v;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (u16, f64)> + '_ {
        masks(self.degree).iter().copied().zip(self.coeffs.iter().copied())
    }

    pub fn scale(&self, s: f64) -> Self {
        FormValue { degree: self.degree, coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.axpy(1.0, other);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.axpy(-1.0, other);
        out
    }

    /// `self += s * other`.
    pub fn axpy(&mut self, s: f64, other: &Self) {
        assert_eq!(self.degree, other.degree, "adding forms of different degree");
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += s * b;
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Coefficient of `dz^0 ^ ... ^ dz^9` for a top form.
    pub fn top(&self) -> f64 {
        assert_eq!(self.degree, DIM);
        self.coeffs[0]
    }

    /// Exterior product. Contributions to each output component are summed in an
    /// order that does not depend on the argument order, so `a ^ b` and
    /// `(-1)^{pq} b ^ a` agree bit for bit.
    pub fn wedge(&self, other: &Self) -> Result<Self, FormError> {
        let (p, q) = (self.degree, other.degree);
        if p + q > DIM {
            return Err(FormError::DegreeOverflow(p, q));
        }
        let mut out = Self::zero(p + q);
        let idx = &tables().index_of;
        if p == q {
            let ms = masks(p);
            for (si, &s) in ms.iter().enumerate() {
                let (as_, bs) = (self.coeffs[si], other.coeffs[si]);
                for (ri, &r) in ms.iter().enumerate().skip(si) {
                    if s & r != 0 || (s == r && p > 0) {
                        continue;
                    }
                    let (ar, br) = (self.coeffs[ri], other.coeffs[ri]);
                    if (as_ == 0.0 || br == 0.0) && (ar == 0.0 || bs == 0.0) {
                        continue;
                    }
                    let slot = idx[(s | r) as usize] as usize;
                    if s == r {
                        out.coeffs[slot] += as_ * bs;
                        continue;
                    }
                    let t1 = wedge_sign(s, r) * (as_ * br);
                    let t2 = wedge_sign(r, s) * (ar * bs);
                    out.coeffs[slot] += t1 + t2;
                }
            }
            return Ok(out);
        }
        let (small, big, small_first) = if p < q { (self, other, true) } else { (other, self, false) };
        for (s, cs) in small.iter() {
            if cs == 0.0 {
                continue;
            }
            for (r, cr) in big.iter() {
                if cr == 0.0 || s & r != 0 {
                    continue;
                }
                let sign = if small_first { wedge_sign(s, r) } else { wedge_sign(r, s) };
                out.coeffs[idx[(s | r) as usize] as usize] += sign * (cs * cr);
            }
        }
        Ok(out)
    }

    /// Interior product with a vector given by its components on the dual basis.
    pub fn contract(&self, v: &[f64; DIM]) -> Result<Self, FormError> {
        if self.degree == 0 {
            return Err(FormError::ContractScalar);
        }
        let mut out = Self::zero(self.degree - 1);
        let idx = &tables().index_of;
        for (m, c) in self.iter() {
            if c == 0.0 {
                continue;
            }
            let mut rest = m;
            while rest != 0 {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if v[i] == 0.0 {
                    continue;
                }
                let pos = (m & ((1u16 << i) - 1)).count_ones();
                let sign = if pos % 2 == 0 { 1.0 } else { -1.0 };
                out.coeffs[idx[(m & !(1 << i)) as usize] as usize] += sign * v[i] * c;
            }
        }
        Ok(out)
    }

    /// Interior product with the `i`-th dual basis vector.
    pub fn contract_basis(&self, i: usize) -> Result<Self, FormError> {
        let mut v = [0.0; DIM];
        v[i] = 1.0;
        self.contract(&v)
    }
}

/// Mask and permutation sign of a list of distinct indices, `None` on repeats.
fn sort_sign(indices: &[usize]) -> Option<(u16, f64)> {
    let mut mask = 0u16;
    let mut sign = 1.0;
    for (p, &i) in indices.iter().enumerate() {
        if mask & (1 << i) != 0 {
            return None;
        }
        mask |= 1 << i;
        for &j in &indices[..p] {
            if j > i {
                sign = -sign;
            }
        }
    }
    Some((mask, sign))
}
