//! Geometric and combinatorial verdicts on hypersurfaces: point counts,
//! smoothness, lines, blocking sets, bound formulas, normal forms, and the
//! exhaustive census.

use thiserror::Error;

use crate::frobcore::FrobError;
use crate::gf::{make_field, Field, GfError};
use crate::mpoly::PolyError;
use crate::projgeom::GeomError;

pub mod bounds;
pub mod census;
pub mod lines;
pub mod points;
pub mod smooth;
pub mod structure;

pub use bounds::{bounds_calculator, exact_sqrt, BoundCheck, BoundKind, Q};
pub use census::{
    census, census_records, census_summary, CensusConfig, CensusFilter, CensusRecord, CensusSummary, Shard,
    DEFAULT_BUDGET,
};
pub use lines::{
    blocking_hypotheses, blocking_verdict, classify_line, fq_line_intersection_profile,
    has_rational_linear_component, line_incidence, restrict_to_line, BlockingReport,
    IntersectionPoint, LineClass, LineIncidenceReport,
};
pub use points::{count_points, count_points_in_range, point_count_report, KnownProperties, PointCountReport};
pub use smooth::{
    best_smoothness, certify_smooth, macaulay_resultant, singular_points, smoothness,
    SmoothnessMode, SmoothnessVerdict, MAX_MACAULAY_ENTRIES,
};
pub use structure::{
    gap_lemma_search, normal_form_match, separated_variables_detect, GapLemmaReport, NormalFormClause,
    NormalFormVerdict, SeparatedSplit,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("extension field of order {0} exceeds the supported maximum")]
    FieldTooLarge(u64),
    #[error("the zero polynomial defines no hypersurface")]
    ZeroPolynomial,
    #[error("cannot certify: {0}")]
    UncertifiableCase(String),
    #[error("Macaulay extraneous minor vanishes")]
    DegenerateMatrixConstruction,
    #[error("expected a plane curve, got dimension {0}")]
    NotAPlaneCurve(usize),
    #[error("the line lies on the hypersurface")]
    LineContained,
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("degree {found} does not match the clause (expected {expected})")]
    DegreeMismatch { expected: u64, found: u64 },
    #[error("{candidates} candidates exceed the budget of {budget}; use --shard i/N")]
    BudgetExceeded { candidates: u128, budget: u128 },
    #[error("bad shard {0}")]
    BadShard(String),
    #[error(transparent)]
    Frob(#[from] FrobError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Gf(#[from] GfError),
}

/// `F_{q^m}` over the field `F_q`.
pub fn ext_field(field: &Field, m: u32) -> Result<Field, AnalysisError> {
    if m == 0 {
        return Err(AnalysisError::InvalidParameters("extension degree 0".into()));
    }
    let order = (field.order() as u64).checked_pow(m).unwrap_or(u64::MAX);
    if order > crate::gf::MAX_FIELD_ORDER {
        return Err(AnalysisError::FieldTooLarge(order));
    }
    if m == 1 {
        return Ok(field.clone());
    }
    Ok(make_field(field.characteristic() as u64, field.degree() * m, None)?)
}
