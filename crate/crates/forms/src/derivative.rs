use crate::{FormError, FormValue, DIM};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiffMode {
    Analytic,
    FiniteDifference,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FdOrder {
    Two,
    Four,
}

impl FdOrder {
    pub fn from_int(n: u32) -> Option<Self> {
        match n {
            2 => Some(FdOrder::Two),
            4 => Some(FdOrder::Four),
            _ => None,
        }
    }

    pub fn as_int(self) -> u32 {
        match self {
            FdOrder::Two => 2,
            FdOrder::Four => 4,
        }
    }
}

/// How derivatives are taken. `step` is relative: the actual step along coordinate
/// `mu` is `step * max(1, |z_mu|)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiffConfig {
    pub mode: DiffMode,
    pub step: f64,
    pub order: FdOrder,
    /// Richardson refinement kicks in when the estimates at `h` and `h/2` differ by
    /// more than this (relative to `max(1, |D|)`).
    pub refine_tol: f64,
}

impl Default for DiffConfig {
    fn default() -> Self {
        DiffConfig { mode: DiffMode::FiniteDifference, step: 1e-4, order: FdOrder::Four, refine_tol: 1e-9 }
    }
}

impl DiffConfig {
    pub fn analytic() -> Self {
        DiffConfig { mode: DiffMode::Analytic, ..Default::default() }
    }

    pub fn finite_difference() -> Self {
        Self::default()
    }

    pub fn is_analytic(&self) -> bool {
        self.mode == DiffMode::Analytic
    }
}

fn stencil<const N: usize, E>(
    f: &dyn Fn(&[f64; N]) -> Result<Vec<f64>, E>,
    z: &[f64; N],
    dir: usize,
    h: f64,
    order: FdOrder,
) -> Result<Vec<f64>, E> {
    let eval = |s: f64| {
        let mut p = *z;
        p[dir] += s;
        f(&p)
    };
    match order {
        FdOrder::Two => {
            let (a, b) = (eval(h)?, eval(-h)?);
            Ok(a.iter().zip(&b).map(|(a, b)| (a - b) / (2.0 * h)).collect())
        }
        FdOrder::Four => {
            let (p2, p1, m1, m2) = (eval(2.0 * h)?, eval(h)?, eval(-h)?, eval(-2.0 * h)?);
            Ok((0..p1.len())
                .map(|k| (8.0 * (p1[k] - m1[k]) - (p2[k] - m2[k])) / (12.0 * h))
                .collect())
        }
    }
}

/// Central finite difference of a vector-valued function along coordinate `dir`.
pub fn partial<const N: usize, E: From<FormError>>(
    f: &dyn Fn(&[f64; N]) -> Result<Vec<f64>, E>,
    z: &[f64; N],
    dir: usize,
    cfg: &DiffConfig,
) -> Result<Vec<f64>, E> {
    if !(cfg.step > 0.0) {
        return Err(FormError::InvalidStep(cfg.step).into());
    }
    let h = cfg.step * z[dir].abs().max(1.0);
    if h < 1e-300 || z[dir] + h == z[dir] {
        return Err(FormError::StepUnderflow { coord: dir, step: h }.into());
    }
    let coarse = stencil(f, z, dir, h, cfg.order)?;
    let fine = stencil(f, z, dir, 0.5 * h, cfg.order)?;
    let mismatch = coarse
        .iter()
        .zip(&fine)
        .any(|(c, f)| (c - f).abs() > cfg.refine_tol * f.abs().max(1.0));
    if !mismatch {
        return Ok(fine);
    }
    let w = match cfg.order {
        FdOrder::Two => 4.0,
        FdOrder::Four => 16.0,
    };
    Ok(coarse.iter().zip(&fine).map(|(c, f)| (w * f - c) / (w - 1.0)).collect())
}

/// All partials of `f` at `z`, one vector per coordinate.
pub fn jacobian<const N: usize, E: From<FormError>>(
    f: &dyn Fn(&[f64; N]) -> Result<Vec<f64>, E>,
    z: &[f64; N],
    cfg: &DiffConfig,
) -> Result<Vec<Vec<f64>>, E> {
    (0..N).map(|dir| partial(f, z, dir, cfg)).collect()
}

/// A differential form field on the 10-dimensional chart.
pub trait FormField {
    fn degree(&self) -> usize;
    fn value(&self, z: &[f64; DIM]) -> Result<FormValue, FormError>;
    /// `d/dz^mu` of the components, when known in closed form.
    fn partials(&self, _z: &[f64; DIM]) -> Option<Result<Vec<FormValue>, FormError>> {
        None
    }
}

/// Wraps a closure as a form field without analytic partials.
pub struct FnForm<F> {
    pub degree: usize,
    pub f: F,
}

impl<F: Fn(&[f64; DIM]) -> Result<FormValue, FormError>> FormField for FnForm<F> {
    fn degree(&self) -> usize {
        self.degree
    }

    fn value(&self, z: &[f64; DIM]) -> Result<FormValue, FormError> {
        (self.f)(z)
    }
}

/// `dF = sum_mu dz^mu ^ d_mu F`.
pub fn d_from_partials(partials: &[FormValue]) -> Result<FormValue, FormError> {
    let k = partials[0].degree();
    let mut out = FormValue::zero(k + 1);
    for (mu, p) in partials.iter().enumerate() {
        out.axpy(1.0, &FormValue::basis1(mu).wedge(p)?);
    }
    Ok(out)
}

/// Partials of a form field by finite differences of its components.
pub fn fd_form_partials(
    field: &dyn Fn(&[f64; DIM]) -> Result<FormValue, FormError>,
    z: &[f64; DIM],
    cfg: &DiffConfig,
) -> Result<Vec<FormValue>, FormError> {
    let degree = field(z)?.degree();
    let flat = |p: &[f64; DIM]| field(p).map(|f| f.coeffs().to_vec());
    jacobian(&flat, z, cfg)?
        .into_iter()
        .map(|c| FormValue::from_coeffs(degree, c))
        .collect()
}

pub fn exterior_derivative(
    field: &dyn FormField,
    z: &[f64; DIM],
    cfg: &DiffConfig,
) -> Result<FormValue, FormError> {
    let partials = match cfg.mode {
        DiffMode::Analytic => field.partials(z).ok_or(FormError::MissingPartials)??,
        DiffMode::FiniteDifference => fd_form_partials(&|p| field.value(p), z, cfg)?,
    };
    d_from_partials(&partials)
}

/// Scalar function on the chart, optionally with a closed-form gradient.
pub trait ChartFunction {
    fn value(&self, z: &[f64; DIM]) -> f64;
    fn gradient(&self, _z: &[f64; DIM]) -> Option<[f64; DIM]> {
        None
    }
}

impl<F: Fn(&[f64; DIM]) -> f64> ChartFunction for F {
    fn value(&self, z: &[f64; DIM]) -> f64 {
        self(z)
    }
}

pub fn gradient(f: &dyn ChartFunction, z: &[f64; DIM], cfg: &DiffConfig) -> Result<[f64; DIM], FormError> {
    match cfg.mode {
        DiffMode::Analytic => f.gradient(z).ok_or(FormError::MissingPartials),
        DiffMode::FiniteDifference => {
            let flat = |p: &[f64; DIM]| Ok::<_, FormError>(vec![f.value(p)]);
            let jac = jacobian(&flat, z, cfg)?;
            Ok(std::array::from_fn(|mu| jac[mu][0]))
        }
    }
}
