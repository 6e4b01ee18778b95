//! Closing a seed point under `e₁`, `e₂` and the sign automorphisms.
//!
//! The frontier is expanded lowest height first. Every sign image of a node
//! is added before the endomorphisms are applied, so the σ-closure of each
//! emitted point is emitted with it. Images whose height exceeds the digit
//! budget are recorded as pruned. The output is sorted by height and then by
//! coordinates and renumbered, so its order does not depend on how the
//! expansion work was scheduled.

use alloc::collections::{BTreeMap, BTreeSet, BinaryHeap};
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Reverse;

use num_traits::{One, Signed, Zero};

use crate::endo::Endomorphisms;
use crate::error::{Error, Result};
use crate::exact::{Int, ProjPoint, Rat};
use crate::fibration::{FibreId, RulingPair};
use crate::surface::{SignAut, Surface};

/// Number of frontier nodes popped and expanded together.
pub const BATCH: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strategy {
    pub max_nodes: usize,
    pub max_height_digits: usize,
    pub sign_closure: bool,
    pub endomorphisms: bool,
}

impl Strategy {
    pub fn new(max_nodes: usize, max_height_digits: usize) -> Self {
        Strategy {
            max_nodes,
            max_height_digits,
            sign_closure: true,
            endomorphisms: true,
        }
    }
}

/// How a node was reached from its parent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OpTag {
    Seed,
    Endo(u8),
    Sigma(SignAut),
}

impl OpTag {
    pub fn tag(self) -> String {
        match self {
            OpTag::Seed => String::from("seed"),
            OpTag::Endo(i) => alloc::format!("e{}", i),
            OpTag::Sigma(s) => s.tag(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitNode {
    pub id: usize,
    pub point: ProjPoint,
    pub parent: Option<usize>,
    pub op: OpTag,
    pub height: Int,
    pub fibres: [FibreId; 2],
}

impl OrbitNode {
    pub fn height_digits(&self) -> usize {
        crate::exact::decimal_digits(&self.height)
    }
}

/// An image discarded because its height exceeded the budget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pruned {
    pub parent: usize,
    pub op: OpTag,
    pub height_digits: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitReport {
    pub nodes: Vec<OrbitNode>,
    pub pruned: Vec<Pruned>,
    /// Endomorphism applications skipped because the fibre was singular.
    pub singular_skips: usize,
}

/// Evaluates batches of `(i, P) ↦ e_i(P)` requests. Implementations may work
/// in parallel but must return results in request order.
pub trait Expander {
    fn expand(&self, endos: &Endomorphisms, requests: &[(usize, ProjPoint)]) -> Vec<Result<ProjPoint>>;
}

/// Evaluates requests one after another.
#[derive(Clone, Copy, Debug, Default)]
pub struct Serial;

impl Expander for Serial {
    fn expand(&self, endos: &Endomorphisms, requests: &[(usize, ProjPoint)]) -> Vec<Result<ProjPoint>> {
        requests.iter().map(|(i, p)| endos.apply(*i, p)).collect()
    }
}

type Key = Reverse<(Int, ProjPoint)>;

struct Pending {
    parent: Option<usize>,
    op: OpTag,
}

pub fn generate_orbit(s: &Surface, r: &RulingPair, seed: &ProjPoint, strat: &Strategy) -> Result<OrbitReport> {
    let endos = Endomorphisms::new(s.clone(), r.clone(), None);
    generate_orbit_with(&endos, seed, strat, &Serial)
}

pub fn generate_orbit_with(
    endos: &Endomorphisms,
    seed: &ProjPoint,
    strat: &Strategy,
    expander: &dyn Expander,
) -> Result<OrbitReport> {
    let s = endos.surface();
    let r = endos.rulings();
    s.require(seed)?;
    if seed.zero_count() >= 2 {
        return Err(Error::SeedInOmega);
    }
    if strat.max_nodes == 0 || strat.max_height_digits < seed.height_digits() {
        return Err(Error::EmptyBudget);
    }

    let mut heap: BinaryHeap<Key> = BinaryHeap::new();
    let mut seen: BTreeSet<ProjPoint> = BTreeSet::new();
    let mut pending: BTreeMap<ProjPoint, Pending> = BTreeMap::new();
    let mut nodes: Vec<OrbitNode> = Vec::new();
    let mut pruned = Vec::new();
    let mut singular_skips = 0;

    let mut offer = |q: ProjPoint,
                     parent: Option<usize>,
                     op: OpTag,
                     heap: &mut BinaryHeap<Key>,
                     pending: &mut BTreeMap<ProjPoint, Pending>,
                     pruned: &mut Vec<Pruned>|
     -> Result<()> {
        if !s.contains(&q) {
            return Err(Error::Internal("orbit point left the surface"));
        }
        if q.zero_count() >= 2 || seen.contains(&q) {
            return Ok(());
        }
        let digits = q.height_digits();
        if digits > strat.max_height_digits {
            pruned.push(Pruned {
                parent: parent.unwrap_or(0),
                op,
                height_digits: digits,
            });
            return Ok(());
        }
        seen.insert(q.clone());
        heap.push(Reverse((q.height(), q.clone())));
        pending.insert(q, Pending { parent, op });
        Ok(())
    };

    offer(seed.clone(), None, OpTag::Seed, &mut heap, &mut pending, &mut pruned)?;

    while !heap.is_empty() && nodes.len() < strat.max_nodes {
        let room = (strat.max_nodes - nodes.len()).min(BATCH);
        let mut batch: Vec<usize> = Vec::new();
        while batch.len() < room {
            let Some(Reverse((height, p))) = heap.pop() else { break };
            let info = pending.remove(&p).expect("pending entry");
            let fibres = [r.fibre_value(1, &p)?, r.fibre_value(2, &p)?];
            let id = nodes.len();
            nodes.push(OrbitNode {
                id,
                point: p,
                parent: info.parent,
                op: info.op,
                height,
                fibres,
            });
            batch.push(id);
        }

        if strat.sign_closure {
            for &id in &batch {
                for sigma in SignAut::all().into_iter().skip(1) {
                    let q = sigma.apply(&nodes[id].point);
                    offer(q, Some(id), OpTag::Sigma(sigma), &mut heap, &mut pending, &mut pruned)?;
                }
            }
        }
        if !strat.endomorphisms {
            continue;
        }
        let mut requests = Vec::new();
        let mut owners = Vec::new();
        for &id in &batch {
            let p = &nodes[id].point;
            if p.zero_count() > 0 {
                continue;
            }
            for i in 1..=2 {
                if r.is_singular_fibre(i, &nodes[id].fibres[i - 1]) {
                    singular_skips += 1;
                    continue;
                }
                requests.push((i, p.clone()));
                owners.push((id, i));
            }
        }
        let images = expander.expand(endos, &requests);
        for ((id, i), img) in owners.into_iter().zip(images) {
            offer(img?, Some(id), OpTag::Endo(i as u8), &mut heap, &mut pending, &mut pruned)?;
        }
    }

    nodes.sort_by(|a, b| (&a.height, &a.point).cmp(&(&b.height, &b.point)));
    let remap: BTreeMap<usize, usize> = nodes.iter().enumerate().map(|(new, n)| (n.id, new)).collect();
    for (new, n) in nodes.iter_mut().enumerate() {
        n.id = new;
        n.parent = n.parent.map(|p| remap[&p]);
    }
    for p in &mut pruned {
        p.parent = remap.get(&p.parent).copied().unwrap_or(p.parent);
    }
    pruned.sort_by_key(|p| (p.parent, p.op, p.height_digits));
    Ok(OrbitReport {
        nodes,
        pruned,
        singular_skips,
    })
}

/// Number of distinct `f_i`-fibres met by the nodes.
pub fn fibre_spread(nodes: &[OrbitNode], i: usize) -> usize {
    nodes
        .iter()
        .map(|n| &n.fibres[i - 1])
        .collect::<BTreeSet<_>>()
        .len()
}

/// The real chart `κ(s:t) = s·sgn(t)/(|s| + |t|)` of `P¹(ℝ)` onto `(−1, 1]`,
/// with `κ(1:0) = 1`.
pub fn chart_value(id: &FibreId) -> Rat {
    if id.t().is_zero() {
        return Rat::one();
    }
    let num = if id.t().is_negative() { -id.s().clone() } else { id.s().clone() };
    Rat::new(num, id.s().abs() + id.t().abs())
}

/// A rectangle `[x0, x1] × [y0, y1]` in the `(κ(f₁), κ(f₂))` plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart {
    pub x0: Rat,
    pub x1: Rat,
    pub y0: Rat,
    pub y1: Rat,
}

impl Default for Chart {
    fn default() -> Self {
        Chart {
            x0: -Rat::one(),
            x1: Rat::one(),
            y0: -Rat::one(),
            y1: Rat::one(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Histogram {
    pub bins: usize,
    /// `counts[row][col]`, the row indexing `κ(f₂)`.
    pub counts: Vec<Vec<usize>>,
    /// Nodes outside the chart.
    pub outside: usize,
}

impl Histogram {
    pub fn occupied(&self) -> usize {
        self.counts.iter().flatten().filter(|&&c| c > 0).count()
    }
}

fn bin_index(v: &Rat, lo: &Rat, hi: &Rat, bins: usize) -> Option<usize> {
    if v < lo || v > hi {
        return None;
    }
    if v == hi {
        return Some(bins - 1);
    }
    let scaled = (v - lo) * Rat::from_integer(Int::from(bins)) / (hi - lo);
    let k = scaled.floor().to_integer();
    Some(usize::try_from(k).expect("bin index fits"))
}

pub fn density_histogram(s: &Surface, nodes: &[OrbitNode], chart: &Chart, bins: usize) -> Result<Histogram> {
    if !s.has_real_points() {
        return Err(Error::NoRealPoints);
    }
    if bins == 0 || chart.x0 >= chart.x1 || chart.y0 >= chart.y1 {
        return Err(Error::EmptyBudget);
    }
    let mut counts = alloc::vec![alloc::vec![0usize; bins]; bins];
    let mut outside = 0;
    for n in nodes {
        let x = chart_value(&n.fibres[0]);
        let y = chart_value(&n.fibres[1]);
        match (
            bin_index(&x, &chart.x0, &chart.x1, bins),
            bin_index(&y, &chart.y0, &chart.y1, bins),
        ) {
            (Some(c), Some(r)) => counts[r][c] += 1,
            _ => outside += 1,
        }
    }
    Ok(Histogram { bins, counts, outside })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(v: [i64; 4]) -> ProjPoint {
        ProjPoint::from_i64(v).unwrap()
    }

    fn v0() -> (Surface, RulingPair) {
        let s = Surface::from_i64([1, 1, -1, -1]).unwrap();
        let r = RulingPair::for_surface(&s, &pt([1, 1, 1, 1])).unwrap();
        (s, r)
    }

    #[test]
    fn sign_closure_only() {
        let (s, r) = v0();
        let mut strat = Strategy::new(100, 10);
        strat.endomorphisms = false;
        let rep = generate_orbit(&s, &r, &pt([1, 1, 1, 1]), &strat).unwrap();
        assert_eq!(rep.nodes.len(), 8);
        assert_eq!(fibre_spread(&rep.nodes, 1), 1);
        assert_eq!(fibre_spread(&rep.nodes, 2), 1);
        let h = density_histogram(&s, &rep.nodes, &Chart::default(), 10).unwrap();
        assert_eq!(h.occupied(), 1);
    }

    #[test]
    fn line_point_closure() {
        let (s, r) = v0();
        let rep = generate_orbit(&s, &r, &pt([1, 1, 1, 1]), &Strategy::new(100, 10)).unwrap();
        let pts: Vec<_> = rep.nodes.iter().map(|n| n.point.clone()).collect();
        assert!(pts.contains(&pt([1, -1, -1, 1])));
        assert!(pts.contains(&pt([-1, 1, -1, 1])));
        assert_eq!(rep.nodes.len(), 8);
        assert_eq!(rep.singular_skips, 16);
    }

    #[test]
    fn budget_errors() {
        let (s, r) = v0();
        assert_eq!(
            generate_orbit(&s, &r, &pt([1, 0, 1, 0]), &Strategy::new(10, 10)).unwrap_err(),
            Error::SeedInOmega
        );
        assert_eq!(
            generate_orbit(&s, &r, &pt([1, 1, 1, 1]), &Strategy::new(0, 10)).unwrap_err(),
            Error::EmptyBudget
        );
    }

    #[test]
    fn chart_values() {
        let id = |s, t| FibreId::from_i64(s, t).unwrap();
        assert_eq!(chart_value(&id(1, 0)), Rat::one());
        assert_eq!(chart_value(&id(0, 1)), Rat::zero());
        assert_eq!(chart_value(&id(1, 1)), Rat::new(Int::from(1), Int::from(2)));
        assert_eq!(chart_value(&id(1, -3)), Rat::new(Int::from(-1), Int::from(4)));
    }

    #[test]
    fn small_euler_run() {
        let (s, r) = v0();
        let rep = generate_orbit(&s, &r, &pt([133, 134, 158, 59]), &Strategy::new(40, 200)).unwrap();
        assert_eq!(rep.nodes.len(), 40);
        assert!(rep.nodes.windows(2).all(|w| (&w[0].height, &w[0].point) < (&w[1].height, &w[1].point)));
        assert_eq!(rep.nodes.iter().filter(|n| n.op == OpTag::Seed).count(), 1);
        for n in &rep.nodes {
            assert!(s.contains(&n.point));
            if let Some(p) = n.parent {
                assert!(p < rep.nodes.len());
            }
        }
        assert!(fibre_spread(&rep.nodes, 1) >= 2);
    }
}
