//! Exact classification of a reduced point against the real-j boundary
//! segments of the fundamental domain.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exact::quad::QuadNum;
use crate::exact::rational::Rational;
use crate::planar::tau::Tau;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Segment {
    /// `a = 1/2`, `b >= sqrt(3)/2`.
    LeftEdge,
    /// `a^2 + b^2 = 1`.
    UnitArc,
    /// `a = 0`, `b >= 1`.
    ImaginaryAxis,
    Interior,
}

#[derive(Clone, Debug)]
pub struct RegionClass {
    pub segment: Segment,
    /// j is real exactly on the three boundary segments.
    pub j_real: bool,
    /// Well-rounded: two independent shortest vectors; within the domain this
    /// is exactly the unit arc.
    pub wr: bool,
    /// Rectangular: the imaginary axis.
    pub rectangular: bool,
}

/// Classify an already-reduced point. All membership tests are exact.
pub fn region_classify(tau: &Tau) -> Result<RegionClass> {
    if !tau.is_reduced() {
        return Err(Error::NotReduced);
    }
    let on_axis = tau.a().is_zero();
    let on_arc = tau.norm_sq().sub(&QuadNum::one()).is_zero();
    let half = QuadNum::rational(Rational::new(BigInt::from(1), BigInt::from(2)));
    let on_left_edge = tau.a().sub(&half).is_zero();

    let segment = if on_axis {
        Segment::ImaginaryAxis
    } else if on_arc {
        Segment::UnitArc
    } else if on_left_edge {
        Segment::LeftEdge
    } else {
        Segment::Interior
    };
    Ok(RegionClass {
        segment,
        j_real: on_axis || on_arc || on_left_edge,
        wr: on_arc,
        rectangular: on_axis,
    })
}
