use fbg_algebra::{AlgebraTables, Mat10, G_DIM, T_DIM};
use fbg_bundle::{BundleError, CoframeField};
use fbg_forms::{gamma_jet, maurer_cartan, StructureConstants, DIM};

/// `omega^{target} += amount * x^0 * gamma^{source}` on top of another coframe field.
///
/// The result is still a rank-10 coframe but is no longer the lift of any `(e, A)`.
pub struct CorruptedCoframe<'a> {
    tables: &'a AlgebraTables,
    sc: StructureConstants,
    inner: &'a dyn CoframeField,
    pub amount: f64,
    pub target: usize,
    pub source: usize,
}

impl<'a> CorruptedCoframe<'a> {
    /// `omega^4 += amount * x^0 * gamma^5`.
    pub fn new(tables: &'a AlgebraTables, inner: &'a dyn CoframeField, amount: f64) -> Self {
        Self::with_slots(tables, inner, amount, 0, 1)
    }

    /// Rotation slots `target`, `source` in `0..6`.
    pub fn with_slots(tables: &'a AlgebraTables, inner: &'a dyn CoframeField, amount: f64, target: usize, source: usize) -> Self {
        CorruptedCoframe { tables, sc: StructureConstants::from_tables(tables), inner, amount, target, source }
    }
}

fn fiber(z: &[f64; DIM]) -> [f64; G_DIM] {
    std::array::from_fn(|i| z[T_DIM + i])
}

impl CoframeField for CorruptedCoframe<'_> {
    fn coframe(&self, z: &[f64; DIM]) -> Result<Mat10, BundleError> {
        let mut m = self.inner.coframe(z)?;
        let gamma = maurer_cartan(self.tables, &fiber(z))?.gamma;
        for j in 0..G_DIM {
            m[(T_DIM + self.target, T_DIM + j)] += self.amount * z[0] * gamma[(self.source, j)];
        }
        Ok(m)
    }

    fn coframe_partials(&self, z: &[f64; DIM]) -> Option<Result<[Mat10; DIM], BundleError>> {
        let inner = self.inner.coframe_partials(z)?;
        Some(inner.and_then(|mut d| {
            let y = fiber(z);
            let gamma = maurer_cartan(self.tables, &y)?.gamma;
            let jet = gamma_jet(&self.sc, &y)?;
            let row = T_DIM + self.target;
            for j in 0..G_DIM {
                d[0][(row, T_DIM + j)] += self.amount * gamma[(self.source, j)];
                for (l, dl) in jet.iter().enumerate() {
                    d[T_DIM + l][(row, T_DIM + j)] += self.amount * z[0] * dl[(self.source, j)];
                }
            }
            Ok(d)
        }))
    }
}
