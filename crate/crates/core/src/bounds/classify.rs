use core::fmt;

use super::BoundsError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    SemiTransitive,
    NotSemiTransitive,
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::SemiTransitive => "SemiTransitive",
            Status::NotSemiTransitive => "NotSemiTransitive",
            Status::Unknown => "Unknown",
        })
    }
}

/// Why a classification holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    /// The graph is complete; a transitive tournament orients it.
    CompleteGraph,
    /// The graph has no edges.
    Edgeless,
    /// `n <= 2k+1` gives chromatic number at most 3; colour-order orientation.
    ThreeColourable,
    /// Contains `K(6,2)`, whose search space is exhausted by a case analysis.
    K62Heredity,
    /// Contains `K(6,2)` through the `15k-24` padding embedding.
    Padding,
    /// Contains the 16-vertex subgraph S of `K(8,3)`, certified non-semi-transitive by search.
    ComputationalS,
    /// Complement of `K(2k,k)` is represented by the matching word.
    ComplementWord,
    /// Contains the complement of `K(2k+1,k)`, ruled out by the long-path counting argument.
    ComplementHeredity,
    /// `2k+1 < n < 15k-24`: no result applies.
    Gap,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::CompleteGraph => "complete-graph",
            Provenance::Edgeless => "edgeless",
            Provenance::ThreeColourable => "3-colourable",
            Provenance::K62Heredity => "K(6,2)-heredity",
            Provenance::Padding => "15k-24-padding",
            Provenance::ComputationalS => "computational-S-certificate+heredity",
            Provenance::ComplementWord => "complement-word",
            Provenance::ComplementHeredity => "complement-K(2k+1,k)-heredity",
            Provenance::Gap => "gap(2k+1,15k-24)",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub n: u64,
    pub k: u64,
    pub complemented: bool,
    pub status: Status,
    pub provenance: Provenance,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bar = if self.complemented { "^c" } else { "" };
        write!(f, "K({},{}){} {} {}", self.n, self.k, bar, self.status, self.provenance)
    }
}

/// Semi-transitivity of `K(n,k)` or its complement from the known results.
pub fn classify(n: u64, k: u64, complemented: bool) -> Result<Classification, BoundsError> {
    if k == 0 || k > n {
        return Err(BoundsError::InvalidParams { n, k });
    }
    use Provenance::*;
    use Status::*;
    let (status, provenance) = if complemented {
        if n < 2 * k {
            (SemiTransitive, CompleteGraph)
        } else if n == 2 * k {
            (SemiTransitive, ComplementWord)
        } else if k == 1 {
            // Distinct singletons never intersect.
            (SemiTransitive, Edgeless)
        } else {
            (NotSemiTransitive, ComplementHeredity)
        }
    } else if k == 1 {
        (SemiTransitive, CompleteGraph)
    } else if n <= 2 * k + 1 {
        (SemiTransitive, ThreeColourable)
    } else if k == 2 {
        (NotSemiTransitive, K62Heredity)
    } else if k == 3 {
        (NotSemiTransitive, ComputationalS)
    } else if n + 24 >= 15 * k {
        (NotSemiTransitive, Padding)
    } else {
        (Unknown, Gap)
    };
    Ok(Classification { n, k, complemented, status, provenance })
}
