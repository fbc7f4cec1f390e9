//! Property suites that can be run outside the test harness.

use std::fmt;

use num_bigint::BigUint;

use crate::bicayley::{BiCayleyGraph, BiCayleySpec};
use crate::graph::Graph;
use crate::havt::{self, construct_havt, havt_witnesses, HavtParams};
use crate::metacyclic::{GroupElem, GroupParams};
use crate::residue::PrimePowerModulus;
use crate::symmetry::{self, Label};
use crate::{Error, Limits};

pub const SUITES: [&str; 5] = ["residue", "metacyclic", "bicayley", "havt", "symmetry"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub suite: &'static str,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "ok" } else { "FAIL" };
        write!(f, "{status:4} {}::{}", self.suite, self.name)?;
        if !self.detail.is_empty() {
            write!(f, " ({})", self.detail)?;
        }
        Ok(())
    }
}

struct Recorder {
    suite: &'static str,
    out: Vec<CheckOutcome>,
}

impl Recorder {
    fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.out.push(CheckOutcome {
            suite: self.suite,
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }
}

/// Runs the named suite (or `all`); `small` keeps each suite to seconds.
pub fn run_suite(name: &str, small: bool, limits: &Limits) -> Result<Vec<CheckOutcome>, Error> {
    if name == "all" {
        let mut out = Vec::new();
        for suite in SUITES {
            out.extend(run_suite(suite, small, limits)?);
        }
        return Ok(out);
    }
    let suite = SUITES
        .iter()
        .copied()
        .find(|s| *s == name)
        .ok_or_else(|| Error::UnknownSuite(name.to_string()))?;
    let mut rec = Recorder { suite, out: Vec::new() };
    match suite {
        "residue" => residue_suite(&mut rec)?,
        "metacyclic" => metacyclic_suite(&mut rec, small)?,
        "bicayley" => bicayley_suite(&mut rec, small, limits)?,
        "havt" => havt_suite(&mut rec, small)?,
        _ => symmetry_suite(&mut rec, small, limits)?,
    }
    Ok(rec.out)
}

fn residue_suite(rec: &mut Recorder) -> Result<(), Error> {
    for (p, alpha) in [(3, 1), (3, 2), (3, 3), (5, 2), (7, 2), (11, 2), (13, 2)] {
        let modulus = PrimePowerModulus::new(p, alpha)?;
        let phi = modulus.unit_group_order();
        let mut ok = true;
        for x in modulus.units() {
            ok &= (x * x.inverse()?).value() == 1;
            let d = x.unit_order()?;
            ok &= phi % d == 0 && x.pow(d).value() == 1;
            for r in x.sqrt_unit()? {
                ok &= r * r == x;
            }
        }
        for k in (1..=phi).filter(|k| phi % k == 0) {
            ok &= modulus.element_of_order(k)?.unit_order()? == k;
        }
        rec.check(format!("units mod {p}^{alpha}"), ok, "");
    }
    for p in [3u64, 5, 7, 11, 13] {
        for alpha in 1..=3 {
            let modulus = PrimePowerModulus::new(p, alpha)?;
            let mut ok = true;
            for k in (2..p).filter(|k| (p - 1) % k == 0) {
                let e = modulus.element_of_order(k)?;
                ok &= (1..k).all(|i| (e.pow(i) - 1).is_unit());
                ok &= (0..k).fold(modulus.zero(), |acc, i| acc + e.pow(i)).is_zero();
            }
            rec.check(format!("e^i - 1 units mod {p}^{alpha}"), ok, "");
        }
    }
    Ok(())
}

fn metacyclic_suite(rec: &mut Recorder, small: bool) -> Result<(), Error> {
    let limit = if small { 81 } else { 243 };
    for p in [3u64, 5] {
        for params in GroupParams::enumerate(p, limit) {
            let group = params.group();
            let auts = group.enumerate_automorphisms(limit)?;
            rec.check(
                format!("|Aut({params})| formula"),
                auts.len() as u64 == params.aut_order_formula(),
                format!("{} automorphisms", auts.len()),
            );
            if params.order() <= 81 {
                let ok = group.elements().all(|x| {
                    let mut acc = group.identity();
                    (1..=group.order()).all(|k| {
                        acc = group.mul(acc, x);
                        group.pow(x, k) == acc
                    })
                });
                rec.check(format!("closed-form power on {params}"), ok, "");
            }
            if params.beta() >= params.alpha() {
                let ok = auts.iter().all(|t| t.image_a.j % p == 0);
                rec.check(format!("image of a keeps a b-exponent divisible by p on {params}"), ok, "");
            }
        }
    }
    Ok(())
}

fn bicayley_suite(rec: &mut Recorder, small: bool, limits: &Limits) -> Result<(), Error> {
    let max = if small { 54 } else { 250 };
    for hp in havt::constructible_instances(max) {
        let c = construct_havt(hp)?;
        let bc = &c.graph;
        let decomposition = bc.normalizer_decomposition(limits)?;
        let aut = symmetry::automorphism_group(bc.graph(), limits)?;
        let same = match bc.brute_force_normalizer(&aut, limits) {
            Some(brute) => brute.same_group(&decomposition),
            None => false,
        };
        rec.check(format!("normalizer of {hp}"), same, format!("order {}", decomposition.order()));
    }
    let params = GroupParams::new(3, 2, 1, 1)?;
    let matching = BiCayleyGraph::build(BiCayleySpec::bipartite(params, vec![GroupElem::IDENTITY])?);
    let order = matching.normalizer_decomposition(limits)?.order();
    rec.check("matching normalizer", order == BigUint::from(27u32 * 54 * 2), format!("order {order}"));
    Ok(())
}

fn havt_suite(rec: &mut Recorder, small: bool) -> Result<(), Error> {
    let max = if small { 250 } else { 1250 };
    for (params, m, k, l) in havt::parameter_tuples(2 * 7u64.pow(3)) {
        if params.alpha() != 2 || params.gamma() != 1 || params.beta() != 1 {
            continue;
        }
        let solvable = havt::eq3_solvable(k, l, params.p());
        let found = havt::solve_eq3(params, m, k, l)?.is_some();
        rec.check(format!("solvability {params} m={m} k={k} l={l}"), solvable == found, "");
    }
    for hp in havt::constructible_instances(max) {
        let c = construct_havt(hp)?;
        let w = havt_witnesses(&c)?;
        let cert = havt::certify(&c, &w);
        rec.check(format!("witnesses for {hp}"), cert.certifies_transitivity(hp.k()), "");
    }
    Ok(())
}

fn symmetry_suite(rec: &mut Recorder, small: bool, limits: &Limits) -> Result<(), Error> {
    let known = [
        ("C6", Graph::cycle(6), 12u32),
        ("K3,3", Graph::complete_bipartite(3, 3), 72),
        ("K5", Graph::complete(5), 120),
    ];
    for (name, g, order) in known {
        let found = symmetry::automorphism_group(&g, limits)?.order();
        rec.check(format!("|Aut({name})|"), found == BigUint::from(order), format!("{found}"));
    }
    let max = if small { 54 } else { 250 };
    for hp in havt::constructible_instances(max) {
        let c = construct_havt(hp)?;
        let aut = symmetry::automorphism_group(c.graph.graph(), limits)?;
        let report = symmetry::report_for(c.graph.graph(), &aut);
        let expected = BigUint::from(2 * hp.k() * hp.params().order());
        let normal = symmetry::is_normal_subgroup(&c.graph.hat_group(), &aut)?;
        let ok = report.aut_order == expected
            && report.label == Label::HalfArcTransitive
            && report.stabilizer_order == BigUint::from(hp.k())
            && report.stabilizer_is_cyclic
            && normal;
        check_instance(rec, &hp, ok, &report.aut_order);
    }
    Ok(())
}

fn check_instance(rec: &mut Recorder, hp: &HavtParams, ok: bool, order: &BigUint) {
    rec.check(format!("classification of {hp}"), ok, format!("|Aut| = {order}"));
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        let outcomes = run_suite("all", true, &Limits::default()).unwrap();
        assert!(!outcomes.is_empty());
        for o in &outcomes {
            assert!(o.passed, "{o}");
        }
        for suite in SUITES {
            assert!(outcomes.iter().any(|o| o.suite == suite));
        }
    }

    #[test]
    fn unknown_suite() {
        assert!(run_suite("nope", true, &Limits::default()).is_err());
    }
}
