//! Pareto dominance under minimization.

use crate::error::{Error, Result};
use crate::model::SolutionSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DominanceRelation {
    FirstDominates,
    SecondDominates,
    Incomparable,
    Equal,
}

impl DominanceRelation {
    pub fn swap(self) -> Self {
        match self {
            DominanceRelation::FirstDominates => DominanceRelation::SecondDominates,
            DominanceRelation::SecondDominates => DominanceRelation::FirstDominates,
            other => other,
        }
    }
}

/// Compares two canonical (minimization) vectors.
pub fn compare(a: &[f64], b: &[f64]) -> Result<DominanceRelation> {
    if a.len() != b.len() {
        return Err(Error::Dimension { expected: a.len(), found: b.len() });
    }
    Ok(compare_unchecked(a, b))
}

pub(crate) fn compare_unchecked(a: &[f64], b: &[f64]) -> DominanceRelation {
    let mut a_better = false;
    let mut b_better = false;
    for (x, y) in a.iter().zip(b) {
        if x < y {
            a_better = true;
        } else if y < x {
            b_better = true;
        }
        if a_better && b_better {
            return DominanceRelation::Incomparable;
        }
    }
    match (a_better, b_better) {
        (true, false) => DominanceRelation::FirstDominates,
        (false, true) => DominanceRelation::SecondDominates,
        _ => DominanceRelation::Equal,
    }
}

/// `true` when `a` dominates `b`.
pub fn dominates(a: &[f64], b: &[f64]) -> bool {
    a.len() == b.len() && compare_unchecked(a, b) == DominanceRelation::FirstDominates
}

/// Indices of the solutions not dominated by any other member, in input
/// order. Duplicates never dominate each other, so all copies survive.
pub fn nondominated_indices(set: &SolutionSet) -> Vec<usize> {
    let canon = set.canonical();
    (0..canon.len())
        .filter(|&i| !canon.iter().any(|other| dominates(other, &canon[i])))
        .collect()
}

pub fn nondominated_filter(set: &SolutionSet) -> SolutionSet {
    set.select(&nondominated_indices(set))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetDominance {
    FirstDominates,
    SecondDominates,
    Neither,
}

/// `true` when every member of `covered` is dominated by or equal to some
/// member of `by`.
fn weakly_covers(by: &SolutionSet, covered: &SolutionSet) -> bool {
    let by = by.canonical();
    covered.canonical().iter().all(|c| {
        by.iter().any(|b| {
            matches!(
                compare_unchecked(b, c),
                DominanceRelation::FirstDominates | DominanceRelation::Equal
            )
        })
    })
}

/// Set-level dominance: one set wins when it weakly covers the other and is
/// not itself weakly covered back.
pub fn set_dominance(s1: &SolutionSet, s2: &SolutionSet) -> Result<SetDominance> {
    s1.check_same_dimension(s2)?;
    let one_covers_two = weakly_covers(s1, s2);
    let two_covers_one = weakly_covers(s2, s1);
    Ok(match (one_covers_two, two_covers_one) {
        (true, false) => SetDominance::FirstDominates,
        (false, true) => SetDominance::SecondDominates,
        _ => SetDominance::Neither,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use DominanceRelation::*;

    fn set(rows: &[&[f64]]) -> SolutionSet {
        SolutionSet::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn compare_examples() {
        assert_eq!(compare(&[15.0, 31.0, 20.0, 50.0], &[10.0, 18.0, 2.0, 30.0]).unwrap(), SecondDominates);
        assert_eq!(compare(&[1.0, 2.0], &[1.0, 2.0]).unwrap(), Equal);
        assert_eq!(compare(&[0.0, 1.0], &[1.0, 0.0]).unwrap(), Incomparable);
        assert!(matches!(compare(&[0.0, 1.0], &[1.0]), Err(Error::Dimension { .. })));
    }

    #[test]
    fn filter_examples() {
        let sample3 = set(&[&[15.0, 31.0, 20.0, 50.0], &[10.0, 18.0, 2.0, 30.0], &[20.0, 5.0, 32.0, 20.0]]);
        assert_eq!(nondominated_indices(&sample3), vec![1, 2]);
        assert_eq!(nondominated_filter(&set(&[&[0.0, 0.0]])).len(), 1);
        assert_eq!(nondominated_filter(&set(&[&[0.0, 1.0], &[0.0, 1.0]])).len(), 2);
    }

    #[test]
    fn maximized_objectives_are_negated() {
        let opts = crate::model::LoadOptions { has_header: false, maximize: vec![1] };
        let loaded = crate::model::read_csv("0,1\n0,2\n".as_bytes(), &opts).unwrap();
        // maximizing the second objective: (0,2) dominates (0,1)
        assert_eq!(nondominated_indices(&loaded), vec![1]);
        let negated = set(&[&[0.0, -1.0], &[0.0, -2.0]]);
        assert_eq!(nondominated_indices(&negated), vec![1]);
    }

    #[test]
    fn set_dominance_examples() {
        assert_eq!(set_dominance(&set(&[&[0.0, 0.0]]), &set(&[&[1.0, 1.0]])).unwrap(), SetDominance::FirstDominates);
        assert_eq!(set_dominance(&set(&[&[1.0, 1.0]]), &set(&[&[0.0, 0.0]])).unwrap(), SetDominance::SecondDominates);
        let a = set(&[&[0.0, 1.0], &[1.0, 0.0]]);
        assert_eq!(set_dominance(&a, &a).unwrap(), SetDominance::Neither);
        assert_eq!(set_dominance(&set(&[&[0.0, 2.0]]), &set(&[&[2.0, 0.0]])).unwrap(), SetDominance::Neither);
        let three = set(&[&[0.0, 1.0, 2.0]]);
        assert!(set_dominance(&a, &three).is_err());
    }

    fn vec3() -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec((0i32..4).prop_map(f64::from), 3)
    }

    proptest! {
        #[test]
        fn antisymmetric(a in vec3(), b in vec3()) {
            prop_assert_eq!(compare(&a, &b).unwrap(), compare(&b, &a).unwrap().swap());
            prop_assert_eq!(compare(&a, &a).unwrap(), Equal);
        }

        #[test]
        fn transitive(a in vec3(), b in vec3(), c in vec3()) {
            if dominates(&a, &b) && dominates(&b, &c) {
                prop_assert!(dominates(&a, &c));
            }
        }

        #[test]
        fn filter_is_idempotent_and_witnessed(rows in prop::collection::vec(vec3(), 1..60)) {
            let s = SolutionSet::new(rows).unwrap();
            let kept = nondominated_indices(&s);
            let f = s.select(&kept);
            prop_assert_eq!(nondominated_filter(&f), f.clone());
            for i in 0..s.len() {
                if !kept.contains(&i) {
                    let witness = kept.iter().any(|&j| dominates(&s.solutions()[j], &s.solutions()[i]));
                    prop_assert!(witness, "removed solution {} has no dominator in the output", i);
                }
            }
        }
    }
}
