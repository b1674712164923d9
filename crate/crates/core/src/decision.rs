//! Verdicts shared by the recognizers.

use std::fmt;

use crate::triangulation::Triangulation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reason {
    TooSmall,
    NotSimple,
    NotConnected,
    NotPlanar,
    NotThreeRegular,
    NotThreeConnected,
    /// Every face choice leaves a non-tree interior, so interior points are
    /// needed but were forbidden.
    InteriorNotTree,
    /// The hole assignment failed validation; details are listed.
    InvalidAssignment(Vec<String>),
    /// A vertex whose degree is outside `{1, 2, 3}`.
    BadDegree { vertex: usize, degree: usize },
    /// A degree-1 or degree-2 vertex touches the outer face.
    LowDegreeOnOuterFace { vertex: usize },
    /// A one-edge cut lies in a face without a hole.
    CutOutsideHole { edge: usize },
    /// The reconstructed primal structure is not a triangulation.
    Reconstruction(String),
    /// No candidate point at infinity produced a valid polygon.
    NoValidInfinity(String),
    /// A valid polygon exists only with interior points, which were
    /// forbidden.
    InteriorPointsRequired,
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reason::TooSmall => write!(f, "too_small"),
            Reason::NotSimple => write!(f, "not_simple"),
            Reason::NotConnected => write!(f, "not_connected"),
            Reason::NotPlanar => write!(f, "not_planar"),
            Reason::NotThreeRegular => write!(f, "not_3_regular"),
            Reason::NotThreeConnected => write!(f, "not_3_connected"),
            Reason::InteriorNotTree => write!(f, "interior_not_tree"),
            Reason::InvalidAssignment(v) => write!(f, "invalid_assignment: {}", v.join("; ")),
            Reason::BadDegree { vertex, degree } => {
                write!(f, "bad_degree: vertex {vertex} has degree {degree}")
            }
            Reason::LowDegreeOnOuterFace { vertex } => {
                write!(f, "low_degree_on_outer_face: vertex {vertex}")
            }
            Reason::CutOutsideHole { edge } => {
                write!(f, "cut_outside_hole: bridge {edge} lies in a face without a hole")
            }
            Reason::Reconstruction(s) => write!(f, "reconstruction_failed: {s}"),
            Reason::NoValidInfinity(s) => write!(f, "no_valid_infinity: {s}"),
            Reason::InteriorPointsRequired => write!(f, "interior_points_required"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    /// Realizable, and some realization has no interior points.
    YesWithoutInteriorPoints,
    /// Realizable, but every realization needs interior points.
    YesWithInteriorPoints,
    No(Reason),
}

#[derive(Clone, Debug)]
pub struct Decision {
    verdict: Verdict,
    witness: Option<Triangulation>,
}

impl Decision {
    pub fn yes(witness: Triangulation, interior_points_required: bool) -> Self {
        let verdict = if interior_points_required {
            Verdict::YesWithInteriorPoints
        } else {
            Verdict::YesWithoutInteriorPoints
        };
        Decision {
            verdict,
            witness: Some(witness),
        }
    }

    pub fn no(reason: Reason) -> Self {
        Decision {
            verdict: Verdict::No(reason),
            witness: None,
        }
    }

    pub fn verdict(&self) -> &Verdict {
        &self.verdict
    }

    pub fn is_yes(&self) -> bool {
        !matches!(self.verdict, Verdict::No(_))
    }

    pub fn witness(&self) -> Option<&Triangulation> {
        self.witness.as_ref()
    }

    pub fn into_witness(self) -> Option<Triangulation> {
        self.witness
    }

    pub fn reason(&self) -> Option<&Reason> {
        match &self.verdict {
            Verdict::No(r) => Some(r),
            _ => None,
        }
    }

    /// `Some` only for yes-verdicts.
    pub fn interior_points_required(&self) -> Option<bool> {
        match self.verdict {
            Verdict::YesWithoutInteriorPoints => Some(false),
            Verdict::YesWithInteriorPoints => Some(true),
            Verdict::No(_) => None,
        }
    }
}
