//! Exhaustive search over small connection sets for locally transitive
//! bipartite bi-Cayley graphs.

use num_bigint::BigUint;
use num_integer::Integer;

use crate::bicayley::{BiCayleyGraph, BiCayleySpec};
use crate::metacyclic::{GroupElem, GroupParams};
use crate::Limits;

use super::{automorphism_group, locally_transitive, report_for, Label, PermGroup, SymmetryError};

/// Whether `|G|` is the full `p`-part of `|A|`.
pub fn sylow_condition_holds(graph: &BiCayleyGraph, aut: &PermGroup) -> bool {
    let params = graph.spec().params();
    let p = BigUint::from(params.p());
    let g = BigUint::from(params.order());
    let order = aut.order();
    order.is_multiple_of(&g) && !order.is_multiple_of(&(g * p))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurveyClass {
    /// Lexicographically least set in its `Aut(G)` orbit.
    pub s: Vec<GroupElem>,
    pub label: Label,
    pub aut_order: BigUint,
    pub locally_transitive: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurveyReport {
    pub params: GroupParams,
    pub max_size: usize,
    /// Generating sets found before reducing by `Aut(G)`.
    pub generating_sets: usize,
    pub classes: Vec<SurveyClass>,
}

impl SurveyReport {
    pub fn locally_transitive_hits(&self) -> Vec<&SurveyClass> {
        self.classes.iter().filter(|c| c.locally_transitive).collect()
    }
}

/// Calls `f` on every sorted `size`-subset of `1..n`.
fn for_each_subset(n: usize, size: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(next: usize, n: usize, size: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == size {
            f(cur);
            return;
        }
        for x in next..n {
            if n - x < size - cur.len() {
                break;
            }
            cur.push(x);
            rec(x + 1, n, size, cur, f);
            cur.pop();
        }
    }
    rec(1, n, size, &mut Vec::with_capacity(size), f);
}

/// Classifies `BiCay(G, ∅, ∅, S)` for every generating `S ∋ 1` with
/// `|S| ≤ max_size`, one representative per `Aut(G)`-orbit.
pub fn survey_small_connection_sets(
    params: GroupParams,
    max_size: usize,
    limits: &Limits,
) -> Result<SurveyReport, SymmetryError> {
    if max_size as u64 >= params.p() {
        return Err(SymmetryError::SizeNotBelowP {
            max_size,
            p: params.p(),
        });
    }
    if params.order() > limits.survey_group_order {
        return Err(SymmetryError::GroupTooLarge {
            order: params.order(),
            limit: limits.survey_group_order,
        });
    }
    let group = params.group();
    let n = group.order() as usize;
    let tables: Vec<Vec<u32>> = group
        .enumerate_automorphisms(limits.survey_group_order)?
        .iter()
        .map(|t| group.aut_table(t))
        .collect();
    let mut generating_sets = 0;
    let mut reps: Vec<Vec<usize>> = Vec::new();
    let mut image = Vec::with_capacity(max_size);
    for size in 1..max_size {
        for_each_subset(n, size, &mut |ranks| {
            let elems: Vec<GroupElem> = ranks.iter().map(|&r| group.unrank(r)).collect();
            if !group.generates_mod_frattini(&elems) {
                return;
            }
            generating_sets += 1;
            let is_least = tables.iter().all(|table| {
                image.clear();
                image.extend(ranks.iter().map(|&r| table[r] as usize));
                image.sort_unstable();
                image.as_slice() >= ranks
            });
            if is_least {
                reps.push(ranks.to_vec());
            }
        });
    }
    let mut classes = Vec::with_capacity(reps.len());
    for ranks in reps {
        let mut s = vec![GroupElem::IDENTITY];
        s.extend(ranks.iter().map(|&r| group.unrank(r)));
        let spec = BiCayleySpec::bipartite(params, s.clone()).expect("1 ∈ S");
        let bc = BiCayleyGraph::build(spec);
        debug_assert!(bc.is_connected());
        let aut = automorphism_group(bc.graph(), limits)?;
        let report = report_for(bc.graph(), &aut);
        classes.push(SurveyClass {
            s,
            label: report.label,
            aut_order: report.aut_order,
            locally_transitive: locally_transitive(bc.graph(), &aut),
        });
    }
    Ok(SurveyReport {
        params,
        max_size,
        generating_sets,
        classes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metacyclic::GroupElem as E;

    #[test]
    fn subsets_are_enumerated_once() {
        let mut seen = Vec::new();
        for_each_subset(5, 2, &mut |s| seen.push(s.to_vec()));
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[0], vec![1, 2]);
        assert_eq!(seen[5], vec![3, 4]);
    }

    #[test]
    fn no_small_generating_sets_for_p3() {
        let params = GroupParams::new(3, 2, 1, 1).unwrap();
        let report = survey_small_connection_sets(params, 2, &Limits::default()).unwrap();
        assert_eq!(report.generating_sets, 0);
        assert!(report.classes.is_empty());
        assert_eq!(
            survey_small_connection_sets(params, 3, &Limits::default()).unwrap_err().name(),
            "SizeNotBelowP"
        );
    }

    #[test]
    fn sylow_condition() {
        let params = GroupParams::new(3, 2, 1, 1).unwrap();
        let limits = Limits::default();
        let havt = BiCayleyGraph::build(
            BiCayleySpec::bipartite(params, vec![E::new(0, 0), E::new(0, 1), E::new(1, 1), E::new(1, 3)]).unwrap(),
        );
        let aut = automorphism_group(havt.graph(), &limits).unwrap();
        assert!(sylow_condition_holds(&havt, &aut));
        let matching = BiCayleyGraph::build(BiCayleySpec::bipartite(params, vec![E::IDENTITY]).unwrap());
        let aut = automorphism_group(matching.graph(), &limits).unwrap();
        assert!(!sylow_condition_holds(&matching, &aut));
    }
}
