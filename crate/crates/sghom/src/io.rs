//! Text formats and test-instance generation.
//!
//! Signed graphs use a line-oriented format, extension `.sg`:
//!
//! ```text
//! sg <n> <m>
//! <u> <v> <sign>
//! ```
//!
//! with `0 <= u < v < n`, sign `+` or `-`, comments starting with `#`, and
//! blank lines ignored. Emission is canonical (edges sorted), so equal
//! graphs serialize to equal bytes. Certificates are key-value lines under
//! a `sgcert 1` header, extension `.cert`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::graph::{Sign, SignedGraph, SwitchSet};
use crate::hom::SignedHom;
use crate::target::TargetCertificate;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Strict parse of the `.sg` format.
pub fn parse_signed_graph(text: &str) -> Result<SignedGraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or_else(|| parse_err(0, "empty input"))?;
    let mut toks = header.split_whitespace();
    if toks.next() != Some("sg") {
        return Err(parse_err(hline, "malformed header: expected `sg <n> <m>`"));
    }
    let n: usize = toks
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| parse_err(hline, "malformed header: bad vertex count"))?;
    let m: usize = toks
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| parse_err(hline, "malformed header: bad edge count"))?;
    if toks.next().is_some() {
        return Err(parse_err(hline, "malformed header: trailing tokens"));
    }

    let mut g = SignedGraph::new(n);
    let mut count = 0usize;
    for (lno, line) in lines {
        let mut toks = line.split_whitespace();
        let u: usize = toks
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| parse_err(lno, "bad edge record: expected `<u> <v> <sign>`"))?;
        let v: usize = toks
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| parse_err(lno, "bad edge record: expected `<u> <v> <sign>`"))?;
        let sign = match toks.next() {
            Some("+") => Sign::Positive,
            Some("-") | Some("\u{2212}") => Sign::Negative,
            _ => return Err(parse_err(lno, "sign token must be + or -")),
        };
        if toks.next().is_some() {
            return Err(parse_err(lno, "trailing tokens on edge record"));
        }
        if u >= n || v >= n {
            return Err(parse_err(lno, format!("vertex out of range (n = {n})")));
        }
        if u == v {
            return Err(parse_err(lno, format!("loop at vertex {u}")));
        }
        if u > v {
            return Err(parse_err(lno, "edge endpoints must satisfy u < v"));
        }
        g.add_edge(u, v, sign)
            .map_err(|_| parse_err(lno, format!("duplicate edge {u} {v}")))?;
        count += 1;
    }
    if count != m {
        return Err(parse_err(
            0,
            format!("header promises {m} edges but {count} records found"),
        ));
    }
    Ok(g)
}

/// Canonical serialization: header then edges sorted by (u, v).
pub fn emit_signed_graph(g: &SignedGraph) -> String {
    let mut out = format!("sg {} {}\n", g.n(), g.m());
    for (u, v, s) in g.edges() {
        out.push_str(&format!("{u} {v} {s}\n"));
    }
    out
}

/// SHA-256 over the canonical serialization, hex-encoded.
pub fn graph_digest(g: &SignedGraph) -> String {
    hex::encode(Sha256::digest(emit_signed_graph(g).as_bytes()))
}

pub fn emit_certificate(cert: &TargetCertificate) -> String {
    format!(
        "sgcert 1\nt {}\norder {}\nseed {}\nattempt {}\nattempts {}\ndigest {}\n",
        cert.t, cert.order, cert.seed, cert.attempt_index, cert.attempts, cert.digest
    )
}

pub fn parse_certificate(text: &str) -> Result<TargetCertificate> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or_else(|| parse_err(0, "empty input"))?;
    if header != "sgcert 1" {
        return Err(parse_err(hline, "malformed header: expected `sgcert 1`"));
    }
    let mut fields = std::collections::HashMap::new();
    for (lno, line) in lines {
        let (key, value) = line
            .split_once(' ')
            .ok_or_else(|| parse_err(lno, "expected `<key> <value>`"))?;
        fields.insert(key.to_string(), (lno, value.to_string()));
    }
    fn take<T: std::str::FromStr>(
        fields: &std::collections::HashMap<String, (usize, String)>,
        key: &str,
    ) -> Result<T> {
        let (lno, v) = fields
            .get(key)
            .ok_or_else(|| parse_err(0, format!("missing field `{key}`")))?;
        v.parse()
            .map_err(|_| parse_err(*lno, format!("bad value for `{key}`")))
    }
    Ok(TargetCertificate {
        t: take(&fields, "t")?,
        order: take(&fields, "order")?,
        seed: take(&fields, "seed")?,
        attempt_index: take(&fields, "attempt")?,
        attempts: take(&fields, "attempts")?,
        digest: take::<String>(&fields, "digest")?,
    })
}

/// One line per source vertex, then a verification line.
pub fn emit_hom(hom: &SignedHom) -> String {
    let mut out = format!("hom {}\n", hom.map.len());
    for (v, &img) in hom.map.iter().enumerate() {
        let tag = if hom.switches.contains(v) {
            "switched"
        } else {
            "unswitched"
        };
        out.push_str(&format!("{v} -> {img} {tag}\n"));
    }
    out.push_str("verified true\n");
    out
}

pub fn parse_hom(text: &str) -> Result<SignedHom> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or_else(|| parse_err(0, "empty input"))?;
    let n: usize = header
        .strip_prefix("hom ")
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| parse_err(hline, "malformed header: expected `hom <n>`"))?;
    let mut map = vec![usize::MAX; n];
    let mut bits = vec![false; n];
    for (lno, line) in lines {
        if line.starts_with("verified") {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let bad = || parse_err(lno, "expected `<v> -> <image> switched|unswitched`");
        if toks.len() != 4 || toks[1] != "->" {
            return Err(bad());
        }
        let v: usize = toks[0].parse().map_err(|_| bad())?;
        let img: usize = toks[2].parse().map_err(|_| bad())?;
        let switched = match toks[3] {
            "switched" => true,
            "unswitched" => false,
            _ => return Err(bad()),
        };
        if v >= n {
            return Err(parse_err(lno, format!("vertex out of range (n = {n})")));
        }
        map[v] = img;
        bits[v] = switched;
    }
    if map.contains(&usize::MAX) {
        return Err(parse_err(0, "map is not total"));
    }
    Ok(SignedHom {
        map,
        switches: SwitchSet::from_bits(&bits),
    })
}

const GENERATOR_RETRY_CAP: usize = 1000;

/// Seeded generator for connected bounded-degree test instances.
///
/// With `regular` set the underlying graph comes from the pairing model,
/// retried until simple and connected; otherwise vertices are attached one
/// by one to an earlier vertex with spare degree (connected by
/// construction) and extra edges are sprinkled in, retried until the
/// result is not regular. Each edge is negative with probability
/// `neg_prob`.
pub fn random_bounded_degree_graph(
    n: usize,
    delta: usize,
    regular: bool,
    neg_prob: f64,
    seed: u64,
) -> Result<SignedGraph> {
    if n < 2 || delta < 1 || delta >= n {
        return Err(Error::InvalidParameter(
            "need n >= 2 and 1 <= delta < n".into(),
        ));
    }
    if regular && n * delta % 2 != 0 {
        return Err(Error::InvalidParameter(
            "n * delta must be even for a regular graph".into(),
        ));
    }
    if !(0.0..=1.0).contains(&neg_prob) {
        return Err(Error::InvalidParameter("neg_prob must be in [0, 1]".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..GENERATOR_RETRY_CAP {
        let skeleton = if regular {
            pairing_model(n, delta, &mut rng)
        } else {
            grown_graph(n, delta, &mut rng)
        };
        let Some(edges) = skeleton else { continue };
        let mut g = SignedGraph::new(n);
        for (u, v) in edges {
            let s = if rng.gen::<f64>() < neg_prob {
                Sign::Negative
            } else {
                Sign::Positive
            };
            g.add_edge(u, v, s)?;
        }
        if !g.is_connected() {
            continue;
        }
        let stats = g.stats();
        if regular {
            if stats.is_regular && stats.max_degree == delta {
                return Ok(g);
            }
        } else if !stats.is_regular && stats.max_degree <= delta {
            return Ok(g);
        }
    }
    Err(Error::RetryCapExceeded)
}

/// One pairing-model draw; `None` if it produced a loop or parallel edge.
fn pairing_model(n: usize, delta: usize, rng: &mut ChaCha8Rng) -> Option<Vec<(usize, usize)>> {
    use rand::seq::SliceRandom;
    let mut points: Vec<usize> = (0..n * delta).map(|p| p / delta).collect();
    points.shuffle(rng);
    let mut edges = Vec::with_capacity(n * delta / 2);
    let mut seen = std::collections::HashSet::new();
    for pair in points.chunks(2) {
        let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
        if u == v || !seen.insert((u, v)) {
            return None;
        }
        edges.push((u, v));
    }
    Some(edges)
}

/// Connected max-degree-bounded growth: attach each vertex to a random
/// earlier vertex with spare degree, then add extra random edges.
fn grown_graph(n: usize, delta: usize, rng: &mut ChaCha8Rng) -> Option<Vec<(usize, usize)>> {
    let mut deg = vec![0usize; n];
    let mut edges = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for v in 1..n {
        let spare: Vec<usize> = (0..v).filter(|&u| deg[u] < delta).collect();
        if spare.is_empty() {
            return None;
        }
        let u = spare[rng.gen_range(0..spare.len())];
        deg[u] += 1;
        deg[v] += 1;
        edges.push((u, v));
        seen.insert((u, v));
    }
    for _ in 0..n / 2 {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        let (u, v) = (u.min(v), u.max(v));
        if u != v && deg[u] < delta && deg[v] < delta && !seen.contains(&(u, v)) {
            deg[u] += 1;
            deg[v] += 1;
            edges.push((u, v));
            seen.insert((u, v));
        }
    }
    Some(edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let g = parse_signed_graph("sg 2 1\n0 1 +\n").unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.sign(0, 1), Some(Sign::Positive));

        let g = parse_signed_graph("# worked triangle\nsg 3 3\n0 1 +\n0 2 -\n1 2 -\n").unwrap();
        assert_eq!(g.sign(0, 1), Some(Sign::Positive));
        assert_eq!(g.sign(0, 2), Some(Sign::Negative));
        assert_eq!(g.sign(1, 2), Some(Sign::Negative));

        let g = parse_signed_graph("sg 1 0\n").unwrap();
        assert_eq!((g.n(), g.m()), (1, 0));
    }

    #[test]
    fn parse_rejections_are_distinct() {
        let cases = [
            ("sx 2 1\n0 1 +\n", "malformed header"),
            ("sg 2\n", "malformed header"),
            ("sg 2 1\n0 2 +\n", "out of range"),
            ("sg 3 1\n1 1 +\n", "loop"),
            ("sg 3 2\n0 1 +\n0 1 -\n", "duplicate"),
            ("sg 2 1\n0 1 ?\n", "sign token"),
            ("sg 2 2\n0 1 +\n", "promises 2 edges"),
            ("sg 3 1\n1 0 +\n", "u < v"),
        ];
        for (text, needle) in cases {
            let err = parse_signed_graph(text).unwrap_err().to_string();
            assert!(err.contains(needle), "{text:?} -> {err}");
        }
    }

    #[test]
    fn emit_parse_roundtrip_random() {
        for seed in 0..200 {
            let g = crate::target::random_signed_complete(6, seed);
            let text = emit_signed_graph(&g);
            let g2 = parse_signed_graph(&text).unwrap();
            assert_eq!(g, g2);
            assert_eq!(emit_signed_graph(&g2), text);
        }
    }

    #[test]
    fn parser_fuzzing_never_panics() {
        let base = emit_signed_graph(&crate::target::random_signed_complete(5, 1));
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..500 {
            let mut bytes = base.clone().into_bytes();
            for _ in 0..rng.gen_range(1..5) {
                let i = rng.gen_range(0..bytes.len());
                bytes[i] = rng.gen();
            }
            // Errors are fine; panics are not.
            let _ = parse_signed_graph(&String::from_utf8_lossy(&bytes));
        }
    }

    #[test]
    fn certificate_roundtrip() {
        let (_, cert) = crate::target::construct_target(2, Some(8), 3, 100).unwrap();
        let text = emit_certificate(&cert);
        let cert2 = parse_certificate(&text).unwrap();
        assert_eq!(cert, cert2);
        let (_, report) = crate::target::verify_certificate(&cert2).unwrap();
        assert!(report.passed);
    }

    #[test]
    fn hom_roundtrip() {
        let g = crate::target::random_signed_complete(4, 9);
        let hom = crate::hom::find_signed_hom(&g, &g).unwrap();
        let parsed = parse_hom(&emit_hom(&hom)).unwrap();
        assert_eq!(parsed, hom);
    }

    #[test]
    fn generator_k4_case() {
        let g = random_bounded_degree_graph(4, 3, true, 0.0, 5).unwrap();
        assert!(g.is_complete());
        assert!(g.edges().iter().all(|&(_, _, s)| s == Sign::Positive));
    }

    #[test]
    fn generator_regular_audit() {
        for seed in 0..10 {
            let g = random_bounded_degree_graph(10, 3, true, 0.5, seed).unwrap();
            assert!(g.is_connected());
            assert!((0..10).all(|v| g.degree(v) == 3));
            // Determinism.
            assert_eq!(g, random_bounded_degree_graph(10, 3, true, 0.5, seed).unwrap());
        }
    }

    #[test]
    fn generator_bounded_audit() {
        for seed in 0..10 {
            let g = random_bounded_degree_graph(20, 3, false, 0.5, seed).unwrap();
            let stats = g.stats();
            assert!(stats.is_connected);
            assert!(stats.max_degree <= 3);
            assert!(!stats.is_regular);
        }
    }

    #[test]
    fn generator_parameter_checks() {
        assert!(random_bounded_degree_graph(1, 1, false, 0.5, 0).is_err());
        assert!(random_bounded_degree_graph(5, 5, false, 0.5, 0).is_err());
        assert!(random_bounded_degree_graph(5, 3, true, 0.5, 0).is_err()); // odd n*delta
        assert!(random_bounded_degree_graph(6, 3, false, 1.5, 0).is_err());
    }
}
