use crate::derivative::{d_from_partials, exterior_derivative, DiffConfig, FnForm, FormField};
use crate::{FormError, FormValue, Mat6, DIM};
use fbg_algebra::{AlgebraTables, GroupElement, G_DIM};

pub const DEFAULT_CHART_RADIUS: f64 = 1.0;
const SERIES_TOL: f64 = 1e-14;
const SERIES_MAX_TERMS: usize = 200;

/// A point `(x, y)` of the chart `R^4 x R^6`, `y` being exponential coordinates on
/// the group.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChartPoint {
    pub x: [f64; 4],
    pub y: [f64; G_DIM],
}

impl ChartPoint {
    pub fn new(x: [f64; 4], y: [f64; G_DIM]) -> Self {
        ChartPoint { x, y }
    }

    pub fn z(&self) -> [f64; DIM] {
        let mut z = [0.0; DIM];
        z[..4].copy_from_slice(&self.x);
        z[4..].copy_from_slice(&self.y);
        z
    }

    pub fn from_z(z: &[f64; DIM]) -> Self {
        ChartPoint { x: std::array::from_fn(|a| z[a]), y: std::array::from_fn(|i| z[4 + i]) }
    }
}

/// Structure constants `c^k_{ij}` of a 6-dimensional Lie algebra.
#[derive(Clone, Debug)]
pub struct StructureConstants {
    c: [[[f64; G_DIM]; G_DIM]; G_DIM],
}

impl StructureConstants {
    pub fn from_tables(t: &AlgebraTables) -> Self {
        StructureConstants { c: std::array::from_fn(|k| std::array::from_fn(|i| std::array::from_fn(|j| t.c_g(k, i, j)))) }
    }

    pub fn abelian() -> Self {
        StructureConstants { c: [[[0.0; G_DIM]; G_DIM]; G_DIM] }
    }

    pub fn c(&self, k: usize, i: usize, j: usize) -> f64 {
        self.c[k][i][j]
    }

    /// `(ad_y)^k_j = c^k_{ij} y^i`.
    pub fn ad_matrix(&self, y: &[f64; G_DIM]) -> Mat6 {
        Mat6::from_fn(|k, j| (0..G_DIM).map(|i| self.c[k][i][j] * y[i]).sum())
    }
}

/// `sum_{k>=0} (-1)^k / (k+1)! ad^k`, the right-trivialized derivative of `exp`.
pub fn dexp_series(ad: &Mat6) -> Result<Mat6, FormError> {
    let mut term = Mat6::identity();
    let mut sum = Mat6::identity();
    for k in 1..SERIES_MAX_TERMS {
        term = -(term * ad) / (k as f64 + 1.0);
        sum += term;
        if term.amax() < SERIES_TOL {
            return Ok(sum);
        }
    }
    Err(FormError::SeriesNonConvergence(SERIES_MAX_TERMS))
}

/// `d/dy^j` of the series, for `ad = ad_y` with `D_j = ad_{u_j}`.
fn dexp_series_jet(ad: &Mat6, dirs: &[Mat6; G_DIM]) -> Result<[Mat6; G_DIM], FormError> {
    // powers[m] = ad^m; derivative of ad^n is sum_m ad^m D ad^{n-1-m}
    let mut powers = vec![Mat6::identity()];
    let mut out = [Mat6::zeros(); G_DIM];
    let mut coef = 1.0;
    for n in 1..SERIES_MAX_TERMS {
        coef *= -1.0 / (n as f64 + 1.0);
        powers.push(powers[n - 1] * ad);
        let mut biggest: f64 = 0.0;
        for (j, o) in out.iter_mut().enumerate() {
            let mut dn = Mat6::zeros();
            for m in 0..n {
                dn += powers[m] * dirs[j] * powers[n - 1 - m];
            }
            let t = dn * coef;
            biggest = biggest.max(t.amax());
            *o += t;
        }
        if biggest < SERIES_TOL && (powers[n] * coef).amax() < SERIES_TOL {
            return Ok(out);
        }
    }
    Err(FormError::SeriesNonConvergence(SERIES_MAX_TERMS))
}

/// Operator 2-norm of `y^i u_i`.
pub fn chart_norm(tables: &AlgebraTables, y: &[f64; G_DIM]) -> f64 {
    tables.g_element(y).singular_values().max()
}

pub fn check_chart(tables: &AlgebraTables, y: &[f64; G_DIM], radius: f64) -> Result<(), FormError> {
    let norm = chart_norm(tables, y);
    if norm >= radius {
        return Err(FormError::OutsideChart { norm, radius });
    }
    Ok(())
}

/// `gamma^i_j` with `g^{-1} dg = u_i gamma^i_j dy^j`, plus `g = exp(y.u)`.
#[derive(Clone, Debug)]
pub struct MaurerCartan {
    pub gamma: Mat6,
    pub g: GroupElement,
}

pub fn maurer_cartan(tables: &AlgebraTables, y: &[f64; G_DIM]) -> Result<MaurerCartan, FormError> {
    maurer_cartan_with_radius(tables, y, DEFAULT_CHART_RADIUS)
}

pub fn maurer_cartan_with_radius(
    tables: &AlgebraTables,
    y: &[f64; G_DIM],
    radius: f64,
) -> Result<MaurerCartan, FormError> {
    check_chart(tables, y, radius)?;
    let sc = StructureConstants::from_tables(tables);
    Ok(MaurerCartan { gamma: dexp_series(&sc.ad_matrix(y))?, g: tables.exp_chart(y) })
}

/// `gamma^i_j(y)` for arbitrary structure constants, no chart check.
pub fn gamma_matrix(sc: &StructureConstants, y: &[f64; G_DIM]) -> Result<Mat6, FormError> {
    dexp_series(&sc.ad_matrix(y))
}

/// `d gamma^i_l / d y^j`, indexed `[j][(i, l)]`.
pub fn gamma_jet(sc: &StructureConstants, y: &[f64; G_DIM]) -> Result<[Mat6; G_DIM], FormError> {
    let dirs: [Mat6; G_DIM] = std::array::from_fn(|j| {
        let mut e = [0.0; G_DIM];
        e[j] = 1.0;
        sc.ad_matrix(&e)
    });
    dexp_series_jet(&sc.ad_matrix(y), &dirs)
}

/// The six 1-forms `gamma^i` on the 10-dimensional chart (fiber slots only).
pub fn gamma_forms(gamma: &Mat6) -> [FormValue; G_DIM] {
    std::array::from_fn(|i| {
        let mut c = [0.0; DIM];
        for j in 0..G_DIM {
            c[4 + j] = gamma[(i, j)];
        }
        FormValue::one_form(&c)
    })
}

/// Signed wedge of the `gamma`s with the listed indices removed, matching
/// `iota_{i_k} ... iota_{i_1} gamma^(6)`.
pub fn gamma_minor(forms: &[FormValue; G_DIM], removed: &[usize]) -> FormValue {
    wedge_minor(forms, removed).0
}

fn wedge_minor(forms: &[FormValue; G_DIM], removed: &[usize]) -> (FormValue, f64) {
    let mut sign = 1.0;
    let mut remaining: Vec<usize> = (0..G_DIM).collect();
    for &r in removed {
        let pos = remaining.iter().position(|&x| x == r).expect("index removed twice");
        if pos % 2 == 1 {
            sign = -sign;
        }
        remaining.remove(pos);
    }
    let mut f = FormValue::scalar(sign);
    for &i in &remaining {
        f = f.wedge(&forms[i]).expect("degree stays below 10");
    }
    (f, sign)
}

/// Product of the 1-form fields `gamma^i` with the listed indices removed, with
/// partials from the product rule.
struct GammaMinorField<'a> {
    sc: &'a StructureConstants,
    removed: Vec<usize>,
}

impl FormField for GammaMinorField<'_> {
    fn degree(&self) -> usize {
        G_DIM - self.removed.len()
    }

    fn value(&self, z: &[f64; DIM]) -> Result<FormValue, FormError> {
        let y = ChartPoint::from_z(z).y;
        Ok(gamma_minor(&gamma_forms(&gamma_matrix(self.sc, &y)?), &self.removed))
    }

    fn partials(&self, z: &[f64; DIM]) -> Option<Result<Vec<FormValue>, FormError>> {
        Some((|| {
            let y = ChartPoint::from_z(z).y;
            let forms = gamma_forms(&gamma_matrix(self.sc, &y)?);
            let jet = gamma_jet(self.sc, &y)?;
            let (_, sign) = wedge_minor(&forms, &self.removed);
            let remaining: Vec<usize> = (0..G_DIM).filter(|i| !self.removed.contains(i)).collect();
            let mut out = vec![FormValue::zero(remaining.len()); DIM];
            for j in 0..G_DIM {
                let dforms = gamma_forms(&jet[j]);
                let mut acc = FormValue::zero(remaining.len());
                for (slot, _) in remaining.iter().enumerate() {
                    let mut f = FormValue::scalar(sign);
                    for (s, &i) in remaining.iter().enumerate() {
                        let piece = if s == slot { &dforms[i] } else { &forms[i] };
                        f = f.wedge(piece)?;
                    }
                    acc.axpy(1.0, &f);
                }
                out[4 + j] = acc;
            }
            Ok(out)
        })())
    }
}

/// Residuals of the four Maurer-Cartan identities: the structure equation,
/// `d gamma^(6) = 0`, `d gamma^(5)_i = 0` and `d gamma^(4)_{ij} + c^k_{ij} gamma^(5)_k = 0`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct MaurerCartanResiduals {
    pub structure: f64,
    pub d_gamma6: f64,
    pub d_gamma5: f64,
    pub d_gamma4: f64,
}

impl MaurerCartanResiduals {
    pub fn max(&self) -> f64 {
        self.structure.max(self.d_gamma6).max(self.d_gamma5).max(self.d_gamma4)
    }
}

pub fn dgamma_identities(
    sc: &StructureConstants,
    y: &[f64; G_DIM],
    cfg: &DiffConfig,
) -> Result<MaurerCartanResiduals, FormError> {
    let z = ChartPoint::new([0.0; 4], *y).z();
    let forms = gamma_forms(&gamma_matrix(sc, y)?);
    let d = |removed: Vec<usize>| exterior_derivative(&GammaMinorField { sc, removed }, &z, cfg);

    let mut out = MaurerCartanResiduals::default();
    for i in 0..G_DIM {
        let dgi = if cfg.is_analytic() {
            let jet = gamma_jet(sc, y)?;
            let partials: Vec<FormValue> = (0..DIM)
                .map(|mu| if mu < 4 { FormValue::zero(1) } else { gamma_forms(&jet[mu - 4])[i].clone() })
                .collect();
            d_from_partials(&partials)?
        } else {
            let field = FnForm {
                degree: 1,
                f: |p: &[f64; DIM]| Ok(gamma_forms(&gamma_matrix(sc, &ChartPoint::from_z(p).y)?)[i].clone()),
            };
            exterior_derivative(&field, &z, cfg)?
        };
        let mut r = dgi;
        for j in 0..G_DIM {
            for k in 0..G_DIM {
                let c = sc.c(i, j, k);
                if c != 0.0 {
                    r.axpy(0.5 * c, &forms[j].wedge(&forms[k])?);
                }
            }
        }
        out.structure = out.structure.max(r.max_abs());
    }

    out.d_gamma6 = d(vec![])?.max_abs();
    for i in 0..G_DIM {
        out.d_gamma5 = out.d_gamma5.max(d(vec![i])?.max_abs());
        for j in 0..G_DIM {
            if i == j {
                continue;
            }
            let mut r = d(vec![i, j])?;
            for k in 0..G_DIM {
                let c = sc.c(k, i, j);
                if c != 0.0 {
                    r.axpy(c, &gamma_minor(&forms, &[k]));
                }
            }
            out.d_gamma4 = out.d_gamma4.max(r.max_abs());
        }
    }
    Ok(out)
}
