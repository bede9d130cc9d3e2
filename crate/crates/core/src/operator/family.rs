use serde::Serialize;

use super::{check_order_preserving_op, check_weakly_additive_op, operator_modulus, Operator, Tabulation};
use crate::error::{Error, Result};
use crate::linalg::axpy;
use crate::report::{PropertyReport, Witness};
use crate::TOL;

/// Orbit norms above this are treated as unbounded.
pub const DEFAULT_ORBIT_CAP: f64 = 1e6;

/// Nonempty list of operators sharing one domain and one codomain.
#[derive(Debug, Clone)]
pub struct OperatorFamily {
    members: Vec<Operator>,
}

impl OperatorFamily {
    pub fn new(members: Vec<Operator>) -> Result<Self> {
        let first = members.first().ok_or(Error::Empty("operator family"))?;
        for t in &members[1..] {
            if t.domain() != first.domain() || t.codomain() != first.codomain() {
                return Err(Error::InvalidOperator("family members must share domain and codomain".into()));
            }
        }
        Ok(Self { members })
    }

    pub fn members(&self) -> &[Operator] {
        &self.members
    }

    /// The orbit `𝓗(x)`.
    pub fn orbit(&self, x: &[f64]) -> Vec<Vec<f64>> {
        self.members.iter().map(|t| t.map(x)).collect()
    }
}

/// Uniform modulus `δ(ε) = ε / M` with `M = sup ‖T(1_E)‖` over the family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EquicontinuityModulus {
    pub sup_unit_norm: f64,
}

impl EquicontinuityModulus {
    pub fn delta(&self, eps: f64) -> f64 {
        if self.sup_unit_norm == 0.0 {
            f64::INFINITY
        } else {
            eps / self.sup_unit_norm
        }
    }
}

/// Bounded orbit at the unit yields one modulus for the whole family.
pub fn equicontinuity_modulus(h: &OperatorFamily, cap: f64) -> Result<EquicontinuityModulus> {
    let m = h.members.iter().map(operator_modulus).fold(0.0, f64::max);
    if !(m <= cap) {
        return Err(Error::Unbounded { norm: m, cap });
    }
    Ok(EquicontinuityModulus { sup_unit_norm: m })
}

/// For every member and every pair with `‖x − y‖ < δ(ε)`, checks
/// `‖T(x) − T(y)‖ < ε + tol`. Pairs outside the modulus are skipped.
pub fn certify_equicontinuity(
    h: &OperatorFamily,
    modulus: &EquicontinuityModulus,
    eps: f64,
    pairs: &[(Vec<f64>, Vec<f64>)],
    tol: f64,
) -> PropertyReport {
    let delta = modulus.delta(eps);
    let dom = h.members[0].domain();
    let cod = h.members[0].codomain();
    let mut rep = PropertyReport::new("equicontinuity");
    for (x, y) in pairs.iter().filter(|(x, y)| dom.dist(x, y) < delta) {
        for t in &h.members {
            let gap = cod.dist(&t.map(x), &t.map(y));
            rep.record(gap - eps, tol, || Witness::new(vec![x.clone(), y.clone()], vec![gap, eps]));
        }
    }
    rep.finish()
}

const LIMIT_SHIFTS: [f64; 6] = [-2.0, -1.0, -0.5, 0.5, 1.0, 2.0];

/// Tabulated pointwise limit of a sequence of operators on the given probes.
///
/// The sequence is accepted when, on every probe and at the unit, the last
/// quarter of the terms stays within `tol` of the final term. The limit is
/// the final term tabulated on probe residuals modulo the unit line (the zero
/// residual is always present) and extended by weak additivity.
pub fn pointwise_limit(seq: &[Operator], probes: &[Vec<f64>], tol: f64) -> Result<(Operator, PropertyReport)> {
    if seq.len() < 2 {
        return Err(Error::SequenceTooShort { len: seq.len(), min: 2 });
    }
    OperatorFamily::new(seq.to_vec())?;
    let last = &seq[seq.len() - 1];
    let dom = last.domain();
    let cod = last.codomain();
    for p in probes {
        dom.check(p)?;
    }
    let tail = &seq[seq.len() - (seq.len() / 4).max(1) - 1..];
    let mut checked: Vec<&[f64]> = probes.iter().map(Vec::as_slice).collect();
    checked.push(dom.unit());
    for (i, p) in checked.iter().enumerate() {
        let target = last.map(p);
        let spread = tail.iter().map(|t| cod.dist(&t.map(p), &target)).fold(0.0, f64::max);
        if !(spread <= tol) {
            return Err(Error::Divergence { probe: i, spread });
        }
    }

    let mut residuals = vec![vec![0.0; dom.dim()]];
    for p in probes {
        let (r, _) = dom.split_unit(p);
        if residuals.iter().all(|q| dom.dist(q, &r) > 0.0) {
            residuals.push(r);
        }
    }
    let bases = residuals.iter().map(|r| last.map(r)).collect();
    let tab = Tabulation { residuals, bases, unit_image: last.unit_image().to_vec() };
    let limit = Operator::tabulated(dom, cod, tab);

    let shifts: Vec<(Vec<f64>, f64)> = probes
        .iter()
        .flat_map(|p| LIMIT_SHIFTS.iter().map(move |&l| (p.clone(), l)))
        .collect();
    let mut pairs: Vec<(Vec<f64>, Vec<f64>)> = Vec::new();
    for x in probes {
        for y in probes {
            if x != y && dom.le(x, y) {
                pairs.push((x.clone(), y.clone()));
            }
        }
        for &l in LIMIT_SHIFTS.iter().filter(|l| **l > 0.0) {
            pairs.push((x.clone(), axpy(x, l, dom.unit())));
        }
    }
    let tol = tol.max(TOL);
    let report = PropertyReport::combine(
        "pointwise_limit",
        &[check_weakly_additive_op(&limit, &shifts, tol), check_order_preserving_op(&limit, &pairs, tol)],
    );
    Ok((limit, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functional::{Capacity, Functional};
    use crate::sampling::Sampler;
    use crate::space::OrderedSpace;

    fn r2() -> OrderedSpace {
        OrderedSpace::orthant(2).unwrap()
    }

    fn choquet_stack(s: &OrderedSpace, a: f64, b: f64) -> Operator {
        let v = Capacity::new(2, vec![0.0, a, 1.0 - a, 1.0]).unwrap();
        let w = Capacity::new(2, vec![0.0, b, b, 1.0]).unwrap();
        let fs = vec![Functional::choquet(s, v).unwrap(), Functional::choquet(s, w).unwrap()];
        Operator::stack(s, s, fs).unwrap()
    }

    #[test]
    fn moduli() {
        let s = r2();
        let h = OperatorFamily::new(vec![choquet_stack(&s, 0.2, 0.4), choquet_stack(&s, 0.7, 0.1)]).unwrap();
        let m = equicontinuity_modulus(&h, DEFAULT_ORBIT_CAP).unwrap();
        assert_eq!(m.delta(0.3), 0.3);
        let pairs = Sampler::new(31).close_pairs(&s, 0.3, 2000);
        assert!(certify_equicontinuity(&h, &m, 0.3, &pairs, TOL).passed);

        let two = OperatorFamily::new(vec![Operator::scaled_identity(&s, 2.0).unwrap()]).unwrap();
        let m2 = equicontinuity_modulus(&two, DEFAULT_ORBIT_CAP).unwrap();
        assert_eq!(m2.delta(1.0), 0.5);

        let grow: Vec<_> = (1..=100).map(|n| Operator::scaled_identity(&s, f64::from(n)).unwrap()).collect();
        let h = OperatorFamily::new(grow).unwrap();
        assert!(matches!(equicontinuity_modulus(&h, 50.0), Err(Error::Unbounded { .. })));

        let zero = OperatorFamily::new(vec![Operator::scaled_identity(&s, 0.0).unwrap()]).unwrap();
        assert_eq!(equicontinuity_modulus(&zero, 1.0).unwrap().delta(1.0), f64::INFINITY);
    }

    #[test]
    fn family_rejects_mismatch() {
        let r3 = OrderedSpace::orthant(3).unwrap();
        assert!(OperatorFamily::new(vec![]).is_err());
        assert!(OperatorFamily::new(vec![Operator::clamp(), Operator::identity(&r3)]).is_err());
    }

    #[test]
    fn limits() {
        let s = r2();
        let probes = Sampler::new(32).points(2, 40);
        let seq: Vec<_> = (1..=400)
            .map(|n| Operator::scaled_identity(&s, 1.0 + 1.0 / f64::from(n)).unwrap())
            .collect();
        let (lim, rep) = pointwise_limit(&seq, &probes, 1e-2).unwrap();
        assert!(rep.passed, "{rep:?}");
        for p in &probes {
            let y = lim.apply(p).unwrap();
            assert!(s.dist(&y, p) <= 5.0 * 2.0 / 400.0 + 1e-12);
        }

        let seq: Vec<_> = (1..=200)
            .map(|n| {
                let t = 1.0 / f64::from(n);
                choquet_stack(&s, 0.3 + t * 0.1, 0.5 - t * 0.2)
            })
            .collect();
        let (lim, rep) = pointwise_limit(&seq, &probes, 1e-2).unwrap();
        assert!(rep.passed);
        let star = choquet_stack(&s, 0.3, 0.5);
        for p in &probes {
            assert!(s.dist(&lim.apply(p).unwrap(), &star.map(p)) < 1e-2);
        }

        let seq: Vec<_> = (1..=20).map(|n| Operator::scaled_identity(&s, f64::from(n)).unwrap()).collect();
        assert!(matches!(pointwise_limit(&seq, &probes, 1e-2), Err(Error::Divergence { .. })));
        assert!(matches!(pointwise_limit(&seq[..1], &probes, 1e-2), Err(Error::SequenceTooShort { .. })));
    }
}
