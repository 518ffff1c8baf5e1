use crate::BundleError;
use fbg_algebra::{AlgebraTables, GroupElement, Mat10, Mat4, Mat6, G_DIM};
use fbg_forms::{gamma_jet, maurer_cartan, ChartPoint, CoframeValue, StructureConstants, DIM};
use fbg_geometry::FieldConfig;

/// A `p`-valued coframe field `eta(z)` on the 10-dimensional chart, row `I` holding
/// the `dz` components of `eta^I`.
pub trait CoframeField: Sync {
    fn coframe(&self, z: &[f64; DIM]) -> Result<Mat10, BundleError>;

    /// `[nu] -> d_nu E`, when available in closed form.
    fn coframe_partials(&self, _z: &[f64; DIM]) -> Option<Result<[Mat10; DIM], BundleError>> {
        None
    }
}

pub(crate) fn check_signature(tables: &AlgebraTables, cfg: &dyn FieldConfig) -> Result<(), BundleError> {
    let (t, c) = (tables.signature().kind(), cfg.signature().kind());
    if t != c {
        return Err(BundleError::SignatureMismatch { tables: t, config: c });
    }
    Ok(())
}

/// `sum_i m^i u_i` for the fiber coordinates `m`.
fn from_coords(tables: &AlgebraTables, m: &[f64; G_DIM]) -> Mat4 {
    tables.g_element(m)
}

/// `alpha = g^{-1} e` and `omega = g^{-1} dg + g^{-1} A g` at a chart point, with the
/// pieces reused by the field equations.
#[derive(Clone, Debug)]
pub struct LiftedFields {
    pub point: ChartPoint,
    pub g: GroupElement,
    pub g_inv: Mat4,
    /// `gamma^i_j`, `g^{-1} dg = u_i gamma^i_j dy^j`.
    pub gamma: Mat6,
    pub e: Mat4,
    pub e_inv: Mat4,
    /// Frame components `A_b = A_mu E^mu_b`.
    pub a_frame: [Mat4; 4],
    /// `(Ad_{g^{-1}} A_b)^j`, indexed `[b][j]`.
    pub ad_ginv_a: [[f64; G_DIM]; 4],
    /// Rows `(alpha, omega)`.
    pub coframe: CoframeValue,
    /// Rows `(e, gamma)`.
    pub eg_coframe: CoframeValue,
}

fn lifted_matrix(tables: &AlgebraTables, e: &Mat4, a: &[Mat4; 4], g: &Mat4, g_inv: &Mat4, gamma: &Mat6) -> Mat10 {
    let mut m = Mat10::zeros();
    let ge = g_inv * e;
    for r in 0..4 {
        for mu in 0..4 {
            m[(r, mu)] = ge[(r, mu)];
        }
    }
    for (mu, am) in a.iter().enumerate() {
        let c = tables.g_coords(&(g_inv * am * g));
        for i in 0..G_DIM {
            m[(4 + i, mu)] = c[i];
        }
    }
    for i in 0..G_DIM {
        for j in 0..G_DIM {
            m[(4 + i, 4 + j)] = gamma[(i, j)];
        }
    }
    m
}

pub fn lift(tables: &AlgebraTables, cfg: &dyn FieldConfig, pt: &ChartPoint) -> Result<LiftedFields, BundleError> {
    check_signature(tables, cfg)?;
    if !cfg.in_domain(&pt.x) {
        return Err(fbg_geometry::GeometryError::OutOfDomain(pt.x).into());
    }
    let mc = maurer_cartan(tables, &pt.y)?;
    let g = mc.g;
    let g_inv = g.matrix.try_inverse().ok_or(fbg_algebra::AlgebraError::NotInvertible)?;
    let e = cfg.vierbein(&pt.x);
    let det = e.determinant();
    let e_inv = match e.try_inverse() {
        Some(v) if det.abs() > 1e-12 => v,
        _ => return Err(fbg_geometry::GeometryError::SingularVierbein { x: pt.x, det }.into()),
    };
    let a = cfg.connection(&pt.x);
    let a_frame: [Mat4; 4] =
        std::array::from_fn(|b| (0..4).fold(Mat4::zeros(), |acc, mu| acc + a[mu] * e_inv[(mu, b)]));
    let ad_ginv_a = std::array::from_fn(|b| tables.g_coords(&(g_inv * a_frame[b] * g.matrix)));
    let m = lifted_matrix(tables, &e, &a, &g.matrix, &g_inv, &mc.gamma);
    let coframe = CoframeValue::new(m);
    if !coframe.is_regular() {
        return Err(BundleError::RankDeficient { det: coframe.det() });
    }
    let mut eg = Mat10::zeros();
    for r in 0..4 {
        for mu in 0..4 {
            eg[(r, mu)] = e[(r, mu)];
        }
    }
    for i in 0..G_DIM {
        for j in 0..G_DIM {
            eg[(4 + i, 4 + j)] = mc.gamma[(i, j)];
        }
    }
    let eg_coframe = CoframeValue::new(eg);
    if !eg_coframe.is_regular() {
        return Err(BundleError::RankDeficient { det: eg_coframe.det() });
    }
    Ok(LiftedFields { point: *pt, g, g_inv, gamma: mc.gamma, e, e_inv, a_frame, ad_ginv_a, coframe, eg_coframe })
}

/// The lift of a field configuration as a coframe field, with closed-form partials when
/// the configuration provides them.
pub struct LiftedCoframe<'a> {
    pub tables: &'a AlgebraTables,
    pub cfg: &'a dyn FieldConfig,
}

impl<'a> LiftedCoframe<'a> {
    pub fn new(tables: &'a AlgebraTables, cfg: &'a dyn FieldConfig) -> Self {
        LiftedCoframe { tables, cfg }
    }
}

impl CoframeField for LiftedCoframe<'_> {
    fn coframe(&self, z: &[f64; DIM]) -> Result<Mat10, BundleError> {
        let pt = ChartPoint::from_z(z);
        let mc = maurer_cartan(self.tables, &pt.y)?;
        let g_inv = mc.g.matrix.try_inverse().ok_or(fbg_algebra::AlgebraError::NotInvertible)?;
        let e = self.cfg.vierbein(&pt.x);
        let a = self.cfg.connection(&pt.x);
        Ok(lifted_matrix(self.tables, &e, &a, &mc.g.matrix, &g_inv, &mc.gamma))
    }

    fn coframe_partials(&self, z: &[f64; DIM]) -> Option<Result<[Mat10; DIM], BundleError>> {
        let pt = ChartPoint::from_z(z);
        let de = self.cfg.vierbein_partials(&pt.x)?;
        let da = self.cfg.connection_partials(&pt.x)?;
        Some((|| {
            let t = self.tables;
            let mc = maurer_cartan(t, &pt.y)?;
            let jet = gamma_jet(&StructureConstants::from_tables(t), &pt.y)?;
            let g = mc.g.matrix;
            let g_inv = g.try_inverse().ok_or(fbg_algebra::AlgebraError::NotInvertible)?;
            let e = self.cfg.vierbein(&pt.x);
            let a = self.cfg.connection(&pt.x);
            let mut out = [Mat10::zeros(); DIM];
            for nu in 0..4 {
                let m = &mut out[nu];
                let ge = g_inv * de[nu];
                for r in 0..4 {
                    for mu in 0..4 {
                        m[(r, mu)] = ge[(r, mu)];
                    }
                }
                for mu in 0..4 {
                    let c = t.g_coords(&(g_inv * da[nu][mu] * g));
                    for i in 0..G_DIM {
                        m[(4 + i, mu)] = c[i];
                    }
                }
            }
            for j in 0..G_DIM {
                // g^{-1} d_j g = Gamma_j
                let col: [f64; G_DIM] = std::array::from_fn(|i| mc.gamma[(i, j)]);
                let gam = from_coords(t, &col);
                let m = &mut out[4 + j];
                let ge = -(gam * g_inv * e);
                for r in 0..4 {
                    for mu in 0..4 {
                        m[(r, mu)] = ge[(r, mu)];
                    }
                }
                for mu in 0..4 {
                    let conj = g_inv * a[mu] * g;
                    let c = t.g_coords(&(conj * gam - gam * conj));
                    for i in 0..G_DIM {
                        m[(4 + i, mu)] = c[i];
                    }
                }
                for i in 0..G_DIM {
                    for l in 0..G_DIM {
                        m[(4 + i, 4 + l)] = jet[j][(i, l)];
                    }
                }
            }
            Ok(out)
        })())
    }
}
