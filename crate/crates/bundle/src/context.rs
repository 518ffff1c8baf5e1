use crate::lift::{lift, LiftedCoframe, LiftedFields};
use crate::structure::{structure_decomposition, StructureDecomposition};
use crate::BundleError;
use fbg_algebra::AlgebraTables;
use fbg_forms::{ChartPoint, DiffConfig};
use fbg_geometry::{
    christoffel_from_jet, divergence_weight, field_jet, torsion_curvature_from_jet, CurvatureData, FieldConfig,
    Tensor3,
};

/// Everything the field equations need at one chart point, computed once.
#[derive(Clone, Debug)]
pub struct PointContext {
    pub lift: LiftedFields,
    pub curvature: CurvatureData,
    /// `Gamma[a][b][c] = Gamma^a_{bc}`.
    pub christoffel: Tensor3,
    /// `Y_c`, with `d e3_c = Y_c e4`.
    pub y_weight: [f64; 4],
    /// Decomposition of `d eta + 1/2 [eta ^ eta]` for the lifted coframe.
    pub structure: StructureDecomposition,
}

pub fn point_context(
    tables: &AlgebraTables,
    cfg: &dyn FieldConfig,
    pt: &ChartPoint,
    diff: &DiffConfig,
) -> Result<PointContext, BundleError> {
    let lifted = lift(tables, cfg, pt)?;
    let jet = field_jet(cfg, &pt.x, diff)?;
    let (t, r) = torsion_curvature_from_jet(&jet);
    let curvature = CurvatureData::from_parts(t, r, &cfg.signature());
    let christoffel = christoffel_from_jet(&jet);
    let y_weight = divergence_weight(&curvature.torsion, &christoffel);
    let structure = structure_decomposition(tables, &LiftedCoframe::new(tables, cfg), &pt.z(), diff)?;
    Ok(PointContext { lift: lifted, curvature, christoffel, y_weight, structure })
}
