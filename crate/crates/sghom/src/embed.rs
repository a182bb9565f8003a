//! Greedy embedding of bounded-degree signed graphs into verified complete
//! targets, and the edge-deletion surgery that extends it to regular graphs.
//!
//! Vertices are placed along a degeneracy ordering. When a vertex comes up,
//! each of its two switch-bit choices determines a sign vector over the
//! images of its placed neighbors; the candidate images are the common
//! signed neighborhoods for the two choices (disjoint sets once at least
//! one neighbor is placed), minus the images reserved for condition (ii):
//! placed vertices sharing a future neighbor with the current vertex must
//! keep pairwise distinct images. With a target that truly has P_{t-1} the
//! candidate pool is counted to be larger than the reserved set, so the
//! greedy choice never gets stuck; a bounded backtracking fallback guards
//! against a defective target.

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::{Sign, SignedGraph};
use crate::hom::{check_signed_hom, SignedHom};
use crate::target::{construct_target, TargetCertificate};

/// Cap on fallback backtracking steps before giving up.
const BACKTRACK_BUDGET: usize = 100_000;

/// Diagnostics from an embedding run. `backtracks` stays 0 whenever the
/// counting argument holds; `guard_violations` counts placement steps whose
/// candidate pool was smaller than 1 + (t-p)(t-2), evidence that the
/// supplied target lacks the property.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct EmbedStats {
    pub backtracks: usize,
    pub guard_violations: usize,
}

/// A verified target extended by two fresh vertices for the regular-case
/// surgery. The base target is the induced subgraph on `0..base_order`,
/// unmodified.
#[derive(Clone, Debug)]
pub struct AugmentedTarget {
    pub graph: SignedGraph,
    pub base_order: usize,
}

struct Frame {
    candidates: Vec<(usize, bool)>,
    next: usize,
}

fn build_frame(
    g: &SignedGraph,
    c: &SignedGraph,
    t: u32,
    order: &[usize],
    pos: &[usize],
    map: &[usize],
    bits: &[bool],
    groups: &[Vec<usize>],
    i: usize,
    stats: &mut EmbedStats,
) -> Frame {
    let v = order[i];
    let placed: Vec<usize> = g
        .neighbors(v)
        .iter()
        .filter(|&w| pos[w] < i)
        .collect();
    let images: Vec<usize> = placed.iter().map(|&w| map[w]).collect();
    debug_assert!(
        {
            let mut sorted = images.clone();
            sorted.sort_unstable();
            sorted.windows(2).all(|w| w[0] != w[1])
        },
        "condition (ii) violated: placed neighbors share an image"
    );

    // Candidate pools for the two switch-bit choices of v.
    let pools: Vec<VertexSet> = [false, true]
        .iter()
        .map(|&bit| {
            let signs: Vec<Sign> = placed
                .iter()
                .map(|&w| g.sign(v, w).unwrap().xor(bit != bits[w]))
                .collect();
            c.common_signed_neighborhood(&images, &signs).unwrap()
        })
        .collect();

    let pool_total = if placed.is_empty() {
        c.n()
    } else {
        debug_assert!(!pools[0].intersects(&pools[1]));
        pools[0].len() + pools[1].len()
    };
    let guard = 1 + (t as i64 - placed.len() as i64) * (t as i64 - 2);
    if (pool_total as i64) < guard {
        stats.guard_violations += 1;
    }

    // Images reserved by condition (ii): placed vertices that share an
    // unplaced neighbor with v, plus placed co-members of any virtual
    // distinctness group containing v.
    let mut reserved = VertexSet::empty(c.n());
    for a in g.neighbors(v).iter().filter(|&a| pos[a] > i) {
        for w in g.neighbors(a).iter() {
            if pos[w] < i {
                reserved.insert(map[w]);
            }
        }
    }
    for grp in groups.iter().filter(|grp| grp.contains(&v)) {
        for &w in grp {
            if w != v && pos[w] < i {
                reserved.insert(map[w]);
            }
        }
    }

    let mut candidates = Vec::new();
    if placed.is_empty() {
        // Both pools are all of V(C); the bit is unconstrained, try 0 first.
        for x in 0..c.n() {
            if !reserved.contains(x) {
                candidates.push((x, false));
                candidates.push((x, true));
            }
        }
    } else {
        let mut d0 = pools[0].clone();
        let mut d1 = pools[1].clone();
        d0.subtract(&reserved);
        d1.subtract(&reserved);
        for x in 0..c.n() {
            if d0.contains(x) {
                candidates.push((x, false));
            }
            if d1.contains(x) {
                candidates.push((x, true));
            }
        }
    }
    Frame { candidates, next: 0 }
}

fn embed_inner(
    g: &SignedGraph,
    c: &SignedGraph,
    t: u32,
    groups: &[Vec<usize>],
) -> Result<(SignedHom, EmbedStats)> {
    let max_degree = (0..g.n()).map(|v| g.degree(v)).max().unwrap_or(0);
    if max_degree > t as usize {
        return Err(Error::InvalidParameter(format!(
            "max degree {max_degree} exceeds t = {t}"
        )));
    }
    let d = t as usize - 1;
    let order = g.degeneracy_ordering(d).ok_or(Error::NotDegenerate(d))?;
    let mut pos = vec![usize::MAX; g.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }

    let mut map = vec![usize::MAX; g.n()];
    let mut bits = vec![false; g.n()];
    let mut stats = EmbedStats::default();
    let mut frames: Vec<Frame> = Vec::with_capacity(g.n());
    let mut i = 0usize;
    while i < g.n() {
        if frames.len() == i {
            frames.push(build_frame(
                g, c, t, &order, &pos, &map, &bits, groups, i, &mut stats,
            ));
        }
        let frame = &mut frames[i];
        if frame.next < frame.candidates.len() {
            let (x, b) = frame.candidates[frame.next];
            frame.next += 1;
            map[order[i]] = x;
            bits[order[i]] = b;
            i += 1;
        } else {
            frames.pop();
            if i == 0 {
                return Err(Error::EmbedStuck {
                    vertex: order[0],
                    backtracks: stats.backtracks,
                });
            }
            i -= 1;
            map[order[i]] = usize::MAX;
            stats.backtracks += 1;
            if stats.backtracks > BACKTRACK_BUDGET {
                return Err(Error::EmbedStuck {
                    vertex: order[i],
                    backtracks: stats.backtracks,
                });
            }
        }
    }

    let hom = SignedHom {
        map,
        switches: crate::graph::SwitchSet::from_bits(&bits),
    };
    if !check_signed_hom(g, c, &hom)? {
        return Err(Error::VerificationFailed);
    }
    Ok((hom, stats))
}

/// Embeds a connected graph with max degree at most `t` and a (t-1)-
/// degeneracy ordering into a target with property P_{t-1}. The caller is
/// responsible for certifying the target; a defective target surfaces as
/// guard violations, backtracking, or an [`Error::EmbedStuck`] failure.
/// Deterministic: identical inputs yield identical homomorphisms.
pub fn greedy_embed(g: &SignedGraph, c: &SignedGraph, t: u32) -> Result<SignedHom> {
    greedy_embed_with_stats(g, c, t).map(|(hom, _)| hom)
}

pub fn greedy_embed_with_stats(
    g: &SignedGraph,
    c: &SignedGraph,
    t: u32,
) -> Result<(SignedHom, EmbedStats)> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    embed_inner(g, c, t, &[])
}

/// The regular-case surgery: delete a non-bridge edge `uv`, embed the
/// remainder (keeping the images of N(u) and of N(v) pairwise distinct via
/// virtual distinctness groups), then re-route `u` and `v` to two fresh
/// vertices appended to the target, choosing the signs of the new edges to
/// satisfy the switched source edges. Unconstrained new pairs are set
/// positive so the augmented target stays complete when the base was.
pub fn embed_with_regular_fix(
    g: &SignedGraph,
    c: &SignedGraph,
    t: u32,
) -> Result<(SignedHom, AugmentedTarget)> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let stats = g.stats();
    if !stats.is_regular || stats.max_degree != t as usize {
        return Err(Error::NotRegular(t as usize));
    }

    // Smallest lexicographic edge whose removal keeps the graph connected.
    let (u, v) = g
        .edges()
        .into_iter()
        .map(|(u, v, _)| (u, v))
        .find(|&(u, v)| {
            let mut h = g.clone();
            h.remove_edge(u, v);
            h.is_connected()
        })
        .ok_or(Error::NotConnected)?;
    let uv_sign = g.sign(u, v).unwrap();
    let mut g2 = g.clone();
    g2.remove_edge(u, v);

    let groups = [g2.neighbors(u).to_vec(), g2.neighbors(v).to_vec()];
    let (partial, _) = embed_inner(&g2, c, t, &groups)?;
    let bits: Vec<bool> = (0..g.n()).map(|w| partial.switches.contains(w)).collect();

    // Augment: copy the base target, append x_u and x_v.
    let base_order = c.n();
    let (x_u, x_v) = (base_order, base_order + 1);
    let mut aug = SignedGraph::new(base_order + 2);
    for (a, b, s) in c.edges() {
        aug.add_edge(a, b, s)?;
    }
    // Required signs toward the re-routed endpoints; u and v keep switch
    // bit 0, so an edge uw needs sign(uw) flipped iff w is switched.
    let mut required: Vec<Option<Sign>> = vec![None; 2 * base_order];
    for (endpoint, x) in [(u, x_u), (v, x_v)] {
        for w in g2.neighbors(endpoint).iter() {
            let z = partial.map[w];
            let s = g.sign(endpoint, w).unwrap().xor(bits[w]);
            let slot = (x - base_order) * base_order + z;
            debug_assert!(required[slot].is_none(), "images of N({endpoint}) collide");
            required[slot] = Some(s);
        }
    }
    for x in [x_u, x_v] {
        for z in 0..base_order {
            let s = required[(x - base_order) * base_order + z].unwrap_or(Sign::Positive);
            aug.add_edge(z, x, s)?;
        }
    }
    aug.add_edge(x_u, x_v, uv_sign)?;

    let mut map = partial.map;
    map[u] = x_u;
    map[v] = x_v;
    let mut final_bits = bits;
    final_bits[u] = false;
    final_bits[v] = false;
    let hom = SignedHom {
        map,
        switches: crate::graph::SwitchSet::from_bits(&final_bits),
    };
    if !check_signed_hom(g, &aug, &hom)? {
        return Err(Error::VerificationFailed);
    }
    Ok((hom, AugmentedTarget { graph: aug, base_order }))
}

/// Result of the full pipeline: a verified homomorphism into a certified
/// (possibly augmented) target.
#[derive(Clone, Debug)]
pub struct PipelineOutcome {
    pub hom: SignedHom,
    pub target: SignedGraph,
    pub certificate: TargetCertificate,
    /// Whether the target carries the two extra surgery vertices.
    pub augmented: bool,
}

/// Computes the max degree, constructs a certified target for it, and
/// dispatches to the greedy embedding or the regular-case surgery.
pub fn end_to_end(g: &SignedGraph, seed: u64, max_attempts: u64) -> Result<PipelineOutcome> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let stats = g.stats();
    if stats.max_degree < 3 {
        return Err(Error::InvalidParameter(
            "pipeline requires max degree >= 3".into(),
        ));
    }
    let t = stats.max_degree as u32;
    let (c, certificate) = construct_target(t, None, seed, max_attempts)?;
    if stats.is_regular {
        let (hom, aug) = embed_with_regular_fix(g, &c, t)?;
        Ok(PipelineOutcome {
            hom,
            target: aug.graph,
            certificate,
            augmented: true,
        })
    } else {
        let hom = greedy_embed(g, &c, t)?;
        Ok(PipelineOutcome {
            hom,
            target: c,
            certificate,
            augmented: false,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Sign;

    fn certified_t3_target() -> SignedGraph {
        construct_target(3, Some(48), 2024, 50).unwrap().0
    }

    fn complete(n: usize, sign: Sign) -> SignedGraph {
        let mut g = SignedGraph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v, sign).unwrap();
            }
        }
        g
    }

    fn petersen(seed: u64) -> SignedGraph {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut g = SignedGraph::new(10);
        for i in 0..5 {
            let mut add = |a: usize, b: usize| {
                let s = if rng.gen() { Sign::Positive } else { Sign::Negative };
                g.add_edge(a, b, s).unwrap();
            };
            add(i, (i + 1) % 5);
            add(5 + i, 5 + (i + 2) % 5);
            add(i, 5 + i);
        }
        g
    }

    fn prism_all_negative() -> SignedGraph {
        let mut g = SignedGraph::new(6);
        for (a, b) in [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)] {
            g.add_edge(a, b, Sign::Negative).unwrap();
        }
        g
    }

    #[test]
    fn single_vertex_embeds_anywhere() {
        let c = certified_t3_target();
        let g = SignedGraph::new(1);
        let hom = greedy_embed(&g, &c, 3).unwrap();
        assert!(check_signed_hom(&g, &c, &hom).unwrap());
    }

    #[test]
    fn k4_minus_edge_embeds_without_backtracking() {
        let c = certified_t3_target();
        let mut g = complete(4, Sign::Positive);
        g.remove_edge(0, 1);
        g.remove_edge(2, 3);
        g.add_edge(2, 3, Sign::Negative).unwrap();
        let (hom, stats) = greedy_embed_with_stats(&g, &c, 3).unwrap();
        assert!(check_signed_hom(&g, &c, &hom).unwrap());
        assert_eq!(stats.backtracks, 0);
        assert_eq!(stats.guard_violations, 0);
    }

    #[test]
    fn greedy_embed_is_deterministic() {
        let c = certified_t3_target();
        let g = petersen(8);
        let mut g2 = g.clone();
        g2.remove_edge(0, 1);
        let a = greedy_embed(&g2, &c, 3).unwrap();
        let b = greedy_embed(&g2, &c, 3).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn regular_fix_k4() {
        let c = certified_t3_target();
        let g = complete(4, Sign::Positive);
        let (hom, aug) = embed_with_regular_fix(&g, &c, 3).unwrap();
        assert_eq!(aug.graph.n(), 50);
        assert_eq!(aug.base_order, 48);
        assert!(check_signed_hom(&g, &aug.graph, &hom).unwrap());
        // The base target is untouched.
        for (u, v, s) in c.edges() {
            assert_eq!(aug.graph.sign(u, v), Some(s));
        }
        assert!(aug.graph.is_complete());
    }

    #[test]
    fn regular_fix_petersen_and_prism() {
        let c = certified_t3_target();
        for g in [petersen(77), prism_all_negative()] {
            let (hom, aug) = embed_with_regular_fix(&g, &c, 3).unwrap();
            assert_eq!(aug.graph.n(), 50);
            assert!(check_signed_hom(&g, &aug.graph, &hom).unwrap());
        }
    }

    #[test]
    fn regular_fix_rejects_non_regular() {
        let c = certified_t3_target();
        let mut g = complete(4, Sign::Positive);
        g.remove_edge(0, 1);
        assert!(matches!(
            embed_with_regular_fix(&g, &c, 3),
            Err(Error::NotRegular(3))
        ));
    }

    #[test]
    fn end_to_end_cases() {
        // Non-regular: K4 minus an edge.
        let mut g = complete(4, Sign::Positive);
        g.remove_edge(0, 1);
        let out = end_to_end(&g, 99, 20).unwrap();
        assert!(!out.augmented);
        assert_eq!(out.target.n(), 48);
        assert!(check_signed_hom(&g, &out.target, &out.hom).unwrap());

        // Regular: prism.
        let out = end_to_end(&prism_all_negative(), 99, 20).unwrap();
        assert!(out.augmented);
        assert_eq!(out.target.n(), 50);

        // Max degree below 3 is rejected.
        let mut p2 = SignedGraph::new(2);
        p2.add_edge(0, 1, Sign::Positive).unwrap();
        assert!(end_to_end(&p2, 0, 5).is_err());

        // Disconnected input is rejected.
        let two = SignedGraph::new(5);
        assert!(matches!(end_to_end(&two, 0, 5), Err(Error::NotConnected)));
    }
}
