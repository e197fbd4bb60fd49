//! The 2-dimensional theory over a real quadratic field: fundamental-domain
//! reduction, virtual-rectangularity decision with isogeny degrees, geodesic
//! classification on the modular curve, CM detection, and the numeric
//! j-invariant.

pub mod cm;
pub mod geodesic;
pub mod jinv;
pub mod reduce;
pub mod region;
pub mod tau;
pub mod vr;

pub use cm::{cm_analyze, CMReport, RootsCheck, TSample};
pub use geodesic::{geodesic_classify, GeodesicClass, GeodesicShape};
pub use jinv::{j_invariant, JInvariant};
pub use reduce::{reduce_to_fundamental, ReductionResult};
pub use region::{region_classify, RegionClass, Segment};
pub use tau::Tau;
pub use vr::{isogeny_degree, vr_decide, IsogenyDegree, VRCertificate};
