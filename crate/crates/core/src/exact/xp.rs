//! Exhaustive edge-deletion enumeration: try every set of at most `t`
//! edges and check whether the rest can be satisfied within budget.

use itertools::Itertools;

use super::{satisfy_kept, DecisionCertificate};
use crate::error::{EccError, Result};
use crate::model::{EdgeColoredHypergraph, Variant};

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc.saturating_mul((n - i) as u128) / (i as u128 + 1))
}

/// Certificate with exactly `t` deleted edges, or `None`.
fn try_size(h: &EdgeColoredHypergraph, variant: Variant, t: usize) -> Option<DecisionCertificate> {
    let m = h.num_edges();
    (0..m).combinations(t).find_map(|removed| {
        let mut kept = vec![true; m];
        for &e in &removed {
            kept[e] = false;
        }
        satisfy_kept(h, variant, &kept).map(|assignment| DecisionCertificate {
            deleted_edges: removed,
            assignment,
        })
    })
}

/// Decides the instance by enumerating deletion sets of size `0..=t`.
pub fn xp_decide(
    h: &EdgeColoredHypergraph,
    variant: Variant,
    t: usize,
    limit: u128,
) -> Result<Option<DecisionCertificate>> {
    let m = h.num_edges();
    let t = t.min(m);
    let space = (0..=t).fold(0u128, |acc, s| acc.saturating_add(binomial(m, s)));
    if space > limit {
        return Err(EccError::GuardExceeded(format!(
            "{space} edge subsets exceed limit {limit}"
        )));
    }
    Ok((0..=t).find_map(|s| try_size(h, variant, s)))
}

/// Smallest number of mistakes, found by increasing the deletion size.
pub fn xp_optimum(h: &EdgeColoredHypergraph, variant: Variant, limit: u128) -> Result<(usize, DecisionCertificate)> {
    let mut spent = 0u128;
    for t in 0..=h.num_edges() {
        spent = spent.saturating_add(binomial(h.num_edges(), t));
        if spent > limit {
            return Err(EccError::GuardExceeded(format!(
                "edge enumeration exceeded {limit} subsets"
            )));
        }
        if let Some(cert) = try_size(h, variant, t) {
            return Ok((t, cert));
        }
    }
    unreachable!("deleting every edge always succeeds")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::tests::{instance_a, instance_b};

    #[test]
    fn binomials() {
        assert_eq!(binomial(10, 3), 120);
        assert_eq!(binomial(5, 0), 1);
        assert_eq!(binomial(5, 5), 1);
        assert_eq!(binomial(3, 4), 0);
    }

    #[test]
    fn instance_optima() {
        let a = instance_a();
        assert_eq!(xp_optimum(&a, Variant::local(1).unwrap(), 1 << 20).unwrap().0, 1);
        assert_eq!(xp_optimum(&a, Variant::local(2).unwrap(), 1 << 20).unwrap().0, 0);
        let (t, cert) = xp_optimum(&instance_b(), Variant::robust(1), 1 << 20).unwrap();
        assert_eq!(t, 1);
        assert!(cert.violation(&instance_b(), Variant::robust(1), 1).is_none());
        assert!(xp_decide(&a, Variant::local(1).unwrap(), 0, 100).unwrap().is_none());
    }
}
