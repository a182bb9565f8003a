//! Homomorphisms of signed graphs.
//!
//! A 2-edge-colored homomorphism maps vertices so that every edge lands on
//! a target edge of the same sign. A signed homomorphism additionally picks
//! a source-side switch set first. The search routines carry the switch
//! choice as one bit per source vertex: an edge `uv` of sign `s` with bits
//! `b_u`, `b_v` must land on a target edge of sign `s` flipped iff
//! `b_u != b_v`.

use crate::error::{Error, Result};
use crate::graph::{Sign, SignedGraph, SwitchSet};

/// Default budget for the exhaustive oracle: number of (map, switch set)
/// candidates it is willing to enumerate.
pub const DEFAULT_HOM_BUDGET: u128 = 100_000_000;

/// A vertex map together with a source-side switch set witnessing a signed
/// homomorphism.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SignedHom {
    pub map: Vec<usize>,
    pub switches: SwitchSet,
}

impl SignedHom {
    pub fn identity(g: &SignedGraph) -> Self {
        SignedHom {
            map: (0..g.n()).collect(),
            switches: SwitchSet::empty(g.n()),
        }
    }
}

/// A chromatic number together with an order-`value` target and a verified
/// homomorphism into it.
#[derive(Clone, Debug)]
pub struct ChromaticWitness {
    pub value: usize,
    pub target: SignedGraph,
    pub hom: SignedHom,
}

fn check_map(g: &SignedGraph, h: &SignedGraph, map: &[usize]) -> Result<()> {
    if map.len() != g.n() || map.iter().any(|&x| x >= h.n()) {
        return Err(Error::InvalidMap);
    }
    Ok(())
}

/// True iff `map` sends every edge of `g` to an edge of `h` of the same sign.
pub fn check_2ec_hom(g: &SignedGraph, h: &SignedGraph, map: &[usize]) -> Result<bool> {
    check_map(g, h, map)?;
    for (u, v, s) in g.edges() {
        if h.sign(map[u], map[v]) != Some(s) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True iff `hom.map` is a 2-edge-colored homomorphism of the switched
/// source `switch(g, hom.switches)` into `h`.
pub fn check_signed_hom(g: &SignedGraph, h: &SignedGraph, hom: &SignedHom) -> Result<bool> {
    if hom.switches.n() != g.n() {
        return Err(Error::LengthMismatch(hom.switches.n(), g.n()));
    }
    check_2ec_hom(&g.switch(&hom.switches)?, h, &hom.map)
}

/// Source vertices ordered so that after the first vertex of each component
/// every vertex has an already-placed neighbor.
fn connectivity_order(g: &SignedGraph) -> Vec<usize> {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for w in g.neighbors(v).iter() {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

/// Backtracking search for a signed homomorphism of `g` into `h`.
///
/// Deterministic: vertices are processed in a fixed breadth-first order and
/// candidate (image, switch-bit) pairs in ascending order. The result is
/// re-verified before being returned.
pub fn find_signed_hom(g: &SignedGraph, h: &SignedGraph) -> Option<SignedHom> {
    let order = connectivity_order(g);
    let mut map = vec![usize::MAX; g.n()];
    let mut bits = vec![false; g.n()];

    fn rec(
        g: &SignedGraph,
        h: &SignedGraph,
        order: &[usize],
        idx: usize,
        map: &mut [usize],
        bits: &mut [bool],
    ) -> bool {
        if idx == order.len() {
            return true;
        }
        let v = order[idx];
        for img in 0..h.n() {
            for bit in [false, true] {
                let ok = g.neighbors(v).iter().filter(|&w| map[w] != usize::MAX).all(|w| {
                    let req = g.sign(v, w).unwrap().xor(bit != bits[w]);
                    h.sign(img, map[w]) == Some(req)
                });
                if ok {
                    map[v] = img;
                    bits[v] = bit;
                    if rec(g, h, order, idx + 1, map, bits) {
                        return true;
                    }
                    map[v] = usize::MAX;
                }
            }
        }
        false
    }

    if rec(g, h, &order, 0, &mut map, &mut bits) {
        let hom = SignedHom {
            map,
            switches: SwitchSet::from_bits(&bits),
        };
        debug_assert!(check_signed_hom(g, h, &hom).unwrap());
        Some(hom)
    } else {
        None
    }
}

/// Full enumeration of all vertex maps and all switch sets. Independent of
/// the backtracking path in [`find_signed_hom`]; intended as an oracle for
/// small instances.
pub fn exhaustive_hom_oracle(
    g: &SignedGraph,
    h: &SignedGraph,
    budget: u128,
) -> Result<Option<SignedHom>> {
    let gn = g.n();
    if gn == 0 {
        return Ok(Some(SignedHom {
            map: vec![],
            switches: SwitchSet::empty(0),
        }));
    }
    if gn >= 64 {
        return Err(Error::BudgetExceeded {
            needed: u128::MAX,
            budget,
        });
    }
    let maps = (h.n() as u128).pow(gn as u32);
    let needed = maps.saturating_mul(1u128 << gn);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let edges = g.edges();
    let mut map = vec![0usize; gn];
    for _ in 0..maps {
        for mask in 0u64..(1u64 << gn) {
            let valid = edges.iter().all(|&(u, v, s)| {
                let req = s.xor((mask >> u & 1) != (mask >> v & 1));
                h.sign(map[u], map[v]) == Some(req)
            });
            if valid {
                let bits: Vec<bool> = (0..gn).map(|v| mask >> v & 1 == 1).collect();
                return Ok(Some(SignedHom {
                    map,
                    switches: SwitchSet::from_bits(&bits),
                }));
            }
        }
        // Next map, odometer style.
        let mut i = 0;
        while i < gn {
            map[i] += 1;
            if map[i] < h.n() {
                break;
            }
            map[i] = 0;
            i += 1;
        }
    }
    Ok(None)
}

/// Quotient search for the minimum target order.
///
/// Each source vertex gets a part in `0..k` and a switch bit; adjacent
/// vertices must take distinct parts and all switched edges between two
/// given parts must carry the same sign. A valid assignment induces an
/// order-`k` target (parts as vertices, inter-part signs as realized,
/// unconstrained pairs as non-edges).
struct QuotientSearch<'a> {
    g: &'a SignedGraph,
    k: usize,
    allow_switch: bool,
    order: Vec<usize>,
    assign: Vec<Option<(usize, bool)>>,
    /// Realized sign between parts p < q, flat at `p * k + q`.
    pair: Vec<Option<Sign>>,
}

impl<'a> QuotientSearch<'a> {
    fn new(g: &'a SignedGraph, k: usize, allow_switch: bool) -> Self {
        // Highest degree first for pruning strength.
        let mut order: Vec<usize> = (0..g.n()).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
        QuotientSearch {
            g,
            k,
            allow_switch,
            order,
            assign: vec![None; g.n()],
            pair: vec![None; k * k],
        }
    }

    #[inline]
    fn pair_idx(&self, p: usize, q: usize) -> usize {
        if p < q {
            p * self.k + q
        } else {
            q * self.k + p
        }
    }

    fn rec(&mut self, idx: usize, used: usize) -> bool {
        if idx == self.order.len() {
            return true;
        }
        let v = self.order[idx];
        // Parts are interchangeable: only the first unused index may open a
        // new part. The global switch flip fixes the first bit to 0.
        let part_limit = (used + 1).min(self.k);
        let bits: &[bool] = if self.allow_switch && idx > 0 {
            &[false, true]
        } else {
            &[false]
        };
        for part in 0..part_limit {
            'bit: for &bit in bits {
                let mut touched: Vec<usize> = Vec::new();
                for w in self.g.neighbors(v).iter() {
                    if let Some((q, bw)) = self.assign[w] {
                        if q == part {
                            // Parts must be independent sets.
                            for &i in &touched {
                                self.pair[i] = None;
                            }
                            continue 'bit;
                        }
                        let req = self.g.sign(v, w).unwrap().xor(bit != bw);
                        let i = self.pair_idx(part, q);
                        match self.pair[i] {
                            Some(s) if s != req => {
                                for &i in &touched {
                                    self.pair[i] = None;
                                }
                                continue 'bit;
                            }
                            Some(_) => {}
                            None => {
                                self.pair[i] = Some(req);
                                touched.push(i);
                            }
                        }
                    }
                }
                self.assign[v] = Some((part, bit));
                if self.rec(idx + 1, used.max(part + 1)) {
                    return true;
                }
                self.assign[v] = None;
                for &i in &touched {
                    self.pair[i] = None;
                }
            }
        }
        false
    }

    fn witness(&self) -> ChromaticWitness {
        let mut target = SignedGraph::new(self.k);
        for p in 0..self.k {
            for q in p + 1..self.k {
                if let Some(s) = self.pair[p * self.k + q] {
                    target.add_edge(p, q, s).unwrap();
                }
            }
        }
        let mut map = vec![0; self.g.n()];
        let mut bits = vec![false; self.g.n()];
        for v in 0..self.g.n() {
            let (p, b) = self.assign[v].unwrap();
            map[v] = p;
            bits[v] = b;
        }
        ChromaticWitness {
            value: self.k,
            target,
            hom: SignedHom {
                map,
                switches: SwitchSet::from_bits(&bits),
            },
        }
    }
}

fn chromatic_number(
    g: &SignedGraph,
    max_order: usize,
    allow_switch: bool,
) -> Result<ChromaticWitness> {
    if max_order < 1 {
        return Err(Error::InvalidParameter("max_order must be >= 1".into()));
    }
    for k in 1..=max_order {
        let mut search = QuotientSearch::new(g, k, allow_switch);
        if search.rec(0, 0) {
            let w = search.witness();
            debug_assert!(check_signed_hom(g, &w.target, &w.hom).unwrap());
            return Ok(w);
        }
    }
    Err(Error::MaxOrderExceeded(max_order))
}

/// Smallest order of a signed graph admitting a signed homomorphism from
/// `g`, searched up to `max_order`. `g.n()` is always a sufficient bound.
pub fn signed_chromatic_number(g: &SignedGraph, max_order: usize) -> Result<ChromaticWitness> {
    chromatic_number(g, max_order, true)
}

/// Same as [`signed_chromatic_number`] but with no re-signing allowed.
pub fn two_ec_chromatic_number(g: &SignedGraph, max_order: usize) -> Result<ChromaticWitness> {
    chromatic_number(g, max_order, false)
}
