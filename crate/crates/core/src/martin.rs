//! Martin's trichotomies for codes whose small-endpoint modules behave well,
//! and the distance/degree bounds they imply in Hamming and Johnson schemes.

use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::ModuleCatalog;
use crate::error::{Error, Result};
use crate::lab::Side;
use crate::scheme::{Family, SchemeSpec};
use crate::spectra::{parameters, CodeVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    BipartiteHalf,
    AntipodalPair,
    /// `δ* >= t+1` (P side) or `δ >= t+1` (Q side).
    Bound,
    Violation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HypothesisStatus {
    /// Checked against a module catalog.
    Verified,
    /// Known for the family and relied on.
    FamilyFact,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hypothesis {
    pub status: HypothesisStatus,
    pub statement: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub statement: String,
    pub lhs: usize,
    pub rhs: usize,
    pub holds: bool,
    pub exempt: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exemption: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MartinReport {
    pub side: Side,
    pub scheme: String,
    pub size: usize,
    pub t: usize,
    pub min_distance: usize,
    pub degree: usize,
    pub dual_distance: usize,
    pub dual_degree: usize,
    pub regular: bool,
    pub hypothesis: Hypothesis,
    /// Every branch whose condition holds, in precedence order.
    pub holding: Vec<Branch>,
    pub branch: Branch,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<BoundCheck>,
}

impl MartinReport {
    /// A violation: the hypothesis applies and no branch holds, or a
    /// non-exempt bound fails.
    pub fn violation(&self) -> bool {
        if self.hypothesis.status == HypothesisStatus::NotApplicable {
            return false;
        }
        self.branch == Branch::Violation || self.bound.as_ref().is_some_and(|b| !b.exempt && !b.holds)
    }

    pub fn exit_code(&self) -> i32 {
        if self.violation() {
            1
        } else {
            0
        }
    }
}

/// `|Y ∩ R_k(y)|` independent of `y ∈ Y` for every `k`.
pub fn is_regular(chi: &CodeVector) -> bool {
    let members: Vec<_> = chi.support().collect();
    let Some(&first) = members.first() else {
        return true;
    };
    let scheme = chi.scheme();
    let counts = |y| {
        let mut c = vec![0u64; scheme.classes() + 1];
        for &z in &members {
            c[scheme.distance(y, z)] += 1;
        }
        c
    };
    let reference = counts(first);
    members.par_iter().all(|&y| counts(y) == reference)
}

/// An even- or odd-weight half of `H(D,2)`.
pub fn is_bipartite_half(chi: &CodeVector) -> bool {
    let scheme = chi.scheme();
    let SchemeSpec::Hamming { d, q: 2 } = scheme.spec() else {
        return false;
    };
    if !chi.is_subset() || d >= 64 || chi.support_len() as u128 != 1u128 << (d - 1) {
        return false;
    }
    let mut parities = chi.support().map(|v| v.bits().count_ones() % 2);
    let p0 = parities.next();
    parities.all(|p| Some(p) == p0)
}

/// `{y, antipode(y)}` in `H(D,2)` or `J(2D,D)`.
pub fn is_antipodal_pair(chi: &CodeVector) -> bool {
    let scheme = chi.scheme();
    if !chi.is_subset() || chi.support_len() != 2 {
        return false;
    }
    let v: Vec<_> = chi.support().collect();
    scheme.antipode(v[0]) == Some(v[1])
}

fn hypothesis(chi: &CodeVector, side: Side, catalog: Option<&ModuleCatalog>) -> Hypothesis {
    let scheme = chi.scheme();
    let d = scheme.classes();
    let statement = match side {
        Side::P => "every module with small endpoint has r <= r*",
        Side::Q => "every module with small dual endpoint has r* <= r",
    }
    .to_string();
    if d < 3 {
        return Hypothesis {
            status: HypothesisStatus::NotApplicable,
            statement,
            reason: format!("diameter {d} < 3"),
        };
    }
    if let Some(cat) = catalog {
        let ok = cat.entries.iter().all(|e| match side {
            Side::P => e.endpoint <= e.dual_endpoint,
            Side::Q => e.dual_endpoint <= e.endpoint,
        });
        let status = if ok { HypothesisStatus::Verified } else { HypothesisStatus::NotApplicable };
        let reason = if ok {
            format!("checked on every entry of the {} catalog", cat.scheme)
        } else {
            format!("the {} catalog has an entry violating it", cat.scheme)
        };
        return Hypothesis { status, statement, reason };
    }
    match (scheme.family(), side) {
        (Family::Hamming, _) => Hypothesis {
            status: HypothesisStatus::FamilyFact,
            statement,
            reason: "Hamming schemes have r = r* for every irreducible module".into(),
        },
        (Family::Johnson, Side::P) => Hypothesis {
            status: HypothesisStatus::FamilyFact,
            statement,
            reason: "Johnson schemes have r <= r* for every irreducible module".into(),
        },
        (Family::Johnson, Side::Q) => Hypothesis {
            status: HypothesisStatus::NotApplicable,
            statement,
            reason: "Johnson schemes have modules with r < r*".into(),
        },
    }
}

/// Trichotomy and bound for one side. `t` defaults to `max(0, δ − s*)` on
/// the P side and `max(0, δ* − s)` on the Q side.
pub fn martin(chi: &CodeVector, side: Side, t: Option<usize>, catalog: Option<&ModuleCatalog>) -> Result<MartinReport> {
    let scheme = chi.scheme();
    if !chi.is_subset() || chi.support_len() < 2 {
        return Err(Error::Hypothesis("the trichotomies need a subset code with at least two members".into()));
    }
    let x = chi.support().next().expect("nonempty");
    let p = parameters(chi, x)?;
    let delta = p.delta.expect("subset code");
    let degree = p.degree.expect("subset code");
    let t = t.unwrap_or(match side {
        Side::P => delta.saturating_sub(p.dual_degree),
        Side::Q => p.dual_distance.saturating_sub(degree),
    });
    let half = is_bipartite_half(chi);
    let pair = is_antipodal_pair(chi);
    let third = match side {
        Side::P => p.dual_distance > t,
        Side::Q => delta > t,
    };
    let holding: Vec<Branch> = [(half, Branch::BipartiteHalf), (pair, Branch::AntipodalPair), (third, Branch::Bound)]
        .into_iter()
        .filter(|(h, _)| *h)
        .map(|(_, b)| b)
        .collect();
    let branch = holding.first().copied().unwrap_or(Branch::Violation);
    let hypothesis = hypothesis(chi, side, catalog);

    let bound = match (side, scheme.family()) {
        (Side::P, family) => {
            let rhs = p.dual_distance + p.dual_degree - 1;
            let exemption = pair.then(|| match family {
                Family::Hamming => "binary repetition code".to_string(),
                Family::Johnson => "complementary pair at N = 2D".to_string(),
            });
            Some(BoundCheck {
                statement: "delta <= delta* + s* - 1".into(),
                lhs: delta,
                rhs,
                holds: delta <= rhs,
                exempt: exemption.is_some(),
                exemption,
            })
        }
        (Side::Q, Family::Hamming) => {
            let rhs = delta + degree - 1;
            Some(BoundCheck {
                statement: "delta* <= delta + s - 1".into(),
                lhs: p.dual_distance,
                rhs,
                holds: p.dual_distance <= rhs,
                exempt: half,
                exemption: half.then(|| "bipartite half".to_string()),
            })
        }
        (Side::Q, Family::Johnson) => None,
    };

    Ok(MartinReport {
        side,
        scheme: scheme.spec().to_string(),
        size: chi.support_len(),
        t,
        min_distance: delta,
        degree,
        dual_distance: p.dual_distance,
        dual_degree: p.dual_degree,
        regular: is_regular(chi),
        hypothesis,
        holding,
        branch,
        bound,
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::scheme::Scheme;

    fn h(d: usize) -> Arc<Scheme> {
        Arc::new(Scheme::hamming(d, 2).unwrap())
    }

    #[test]
    fn repetition_takes_antipodal_branch() {
        let s = h(8);
        let chi = CodeVector::from_subset(s.clone(), [s.origin(), s.antipode(s.origin()).unwrap()]);
        for side in [Side::P, Side::Q] {
            let r = martin(&chi, side, None, None).unwrap();
            assert_eq!(r.branch, Branch::AntipodalPair);
            assert!(!r.violation());
        }
        let p = martin(&chi, Side::P, None, None).unwrap();
        let b = p.bound.unwrap();
        assert!(b.exempt && !b.holds);
    }

    #[test]
    fn even_weight_is_bipartite_half() {
        let s = h(6);
        let words = s.vertices().unwrap().into_iter().filter(|v| v.bits().count_ones() % 2 == 0);
        let chi = CodeVector::from_subset(s.clone(), words);
        assert!(is_regular(&chi));
        let r = martin(&chi, Side::Q, None, None).unwrap();
        assert_eq!(r.branch, Branch::BipartiteHalf);
        assert!(r.bound.unwrap().exempt);
        assert_eq!(martin(&chi, Side::P, None, None).unwrap().branch, Branch::BipartiteHalf);
    }

    #[test]
    fn irregular_code() {
        let s = h(4);
        let chi = CodeVector::from_subset(s.clone(), ["0000", "1000", "0111"].map(|w| s.parse_vertex(w).unwrap()));
        assert!(!is_regular(&chi));
    }

    #[test]
    fn johnson_q_side_not_applicable() {
        let s = Arc::new(Scheme::johnson(8, 3).unwrap());
        let chi = CodeVector::from_subset(s.clone(), ["1,2,3", "4,5,6", "1,7,8"].map(|w| s.parse_vertex(w).unwrap()));
        let r = martin(&chi, Side::Q, None, None).unwrap();
        assert_eq!(r.hypothesis.status, HypothesisStatus::NotApplicable);
        assert!(r.bound.is_none());
        assert!(!r.violation());
    }
}
