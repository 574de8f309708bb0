//! Deterministic graph generators: named families plus seeded random models.
//!
//! Random generators are bit-reproducible for a fixed seed; all randomness
//! flows through a ChaCha stream seeded from the caller-supplied value.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Graph, GraphError};

const GNP_MAX_ATTEMPTS: usize = 100;
const REGULAR_MAX_ATTEMPTS: usize = 100;

/// Path P_n on `n >= 2` vertices.
pub fn path(n: usize) -> Result<Graph, GraphError> {
    if n < 2 {
        return Err(GraphError::InvalidParameter(format!("path needs n >= 2, got {n}")));
    }
    Graph::new(n, (0..n - 1).map(|i| (i as u32, i as u32 + 1)).collect())
}

/// Cycle C_n on `n >= 3` vertices.
pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::InvalidParameter(format!("cycle needs n >= 3, got {n}")));
    }
    Graph::new(
        n,
        (0..n).map(|i| (i as u32, ((i + 1) % n) as u32)).collect(),
    )
}

/// Complete graph K_n, `n >= 2`.
pub fn complete(n: usize) -> Result<Graph, GraphError> {
    if n < 2 {
        return Err(GraphError::InvalidParameter(format!("complete needs n >= 2, got {n}")));
    }
    let mut edges = Vec::with_capacity(n * (n - 1) / 2);
    for u in 0..n {
        for v in (u + 1)..n {
            edges.push((u as u32, v as u32));
        }
    }
    Graph::new(n, edges)
}

/// Star K_{1,n-1}: vertex 0 is the center, `n >= 2` total vertices.
pub fn star(n: usize) -> Result<Graph, GraphError> {
    if n < 2 {
        return Err(GraphError::InvalidParameter(format!("star needs n >= 2, got {n}")));
    }
    Graph::new(n, (1..n).map(|v| (0, v as u32)).collect())
}

/// Complete bipartite K_{a,b} with parts `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph, GraphError> {
    if a == 0 || b == 0 {
        return Err(GraphError::InvalidParameter(format!(
            "complete_bipartite needs both parts nonempty, got ({a}, {b})"
        )));
    }
    let mut edges = Vec::with_capacity(a * b);
    for u in 0..a {
        for v in 0..b {
            edges.push((u as u32, (a + v) as u32));
        }
    }
    Graph::new(a + b, edges)
}

/// Hypercube Q_d on `2^d` vertices, edges between ids differing in one bit.
pub fn hypercube(dim: usize) -> Result<Graph, GraphError> {
    if dim == 0 || dim > 20 {
        return Err(GraphError::InvalidParameter(format!(
            "hypercube needs 1 <= dim <= 20, got {dim}"
        )));
    }
    let n = 1usize << dim;
    let mut edges = Vec::with_capacity(n * dim / 2);
    for v in 0..n {
        for b in 0..dim {
            let u = v ^ (1 << b);
            if u > v {
                edges.push((v as u32, u as u32));
            }
        }
    }
    Graph::new(n, edges)
}

/// The Petersen graph: outer 5-cycle, inner pentagram, five spokes.
pub fn petersen() -> Graph {
    let mut edges = Vec::with_capacity(15);
    for i in 0u32..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
        edges.push((i, 5 + i));
    }
    Graph::new(10, edges).expect("petersen construction is valid")
}

/// Erdős–Rényi G(n, p). Retries until the sample has no isolated vertex,
/// failing after 100 attempts.
pub fn gnp(n: usize, p: f64, seed: u64) -> Result<Graph, GraphError> {
    if n < 2 {
        return Err(GraphError::InvalidParameter(format!("gnp needs n >= 2, got {n}")));
    }
    if !(p > 0.0 && p <= 1.0) {
        return Err(GraphError::InvalidParameter(format!(
            "gnp needs p in (0, 1], got {p}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..GNP_MAX_ATTEMPTS {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                if rng.gen_bool(p) {
                    edges.push((u as u32, v as u32));
                }
            }
        }
        match Graph::new(n, edges) {
            Ok(g) => return Ok(g),
            Err(GraphError::IsolatedVertex(_)) | Err(GraphError::Empty) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(GraphError::GenerationFailed {
        attempts: GNP_MAX_ATTEMPTS,
        reason: format!("G({n}, {p}) kept producing isolated vertices"),
    })
}

/// Random d-regular graph via the pairing model with stuck-pair reshuffling.
///
/// Requires `n * d` even and `d < n`. Deterministic for a fixed seed.
pub fn random_regular(n: usize, d: usize, seed: u64) -> Result<Graph, GraphError> {
    if d == 0 || n < 2 || d >= n {
        return Err(GraphError::InvalidParameter(format!(
            "random_regular needs 1 <= d < n, got n={n} d={d}"
        )));
    }
    if !(n * d).is_multiple_of(2) {
        return Err(GraphError::InvalidParameter(format!(
            "random_regular needs n*d even, got n={n} d={d}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    'attempt: for _ in 0..REGULAR_MAX_ATTEMPTS {
        let mut stubs: Vec<u32> = (0..n as u32)
            .flat_map(|v| std::iter::repeat_n(v, d))
            .collect();
        let mut edges: Vec<(u32, u32)> = Vec::with_capacity(n * d / 2);
        let mut adjacent = std::collections::HashSet::new();
        // Pair stubs greedily; reshuffle the leftovers whenever a full pass
        // adds nothing, give up on the attempt if that persists.
        let mut stale_rounds = 0;
        while !stubs.is_empty() {
            stubs.shuffle(&mut rng);
            let mut leftovers = Vec::new();
            let mut progressed = false;
            let mut i = 0;
            while i + 1 < stubs.len() {
                let (u, v) = (stubs[i], stubs[i + 1]);
                let key = (u.min(v), u.max(v));
                if u != v && !adjacent.contains(&key) {
                    adjacent.insert(key);
                    edges.push(key);
                    progressed = true;
                } else {
                    leftovers.push(u);
                    leftovers.push(v);
                }
                i += 2;
            }
            if i < stubs.len() {
                leftovers.push(stubs[i]);
            }
            stubs = leftovers;
            if progressed {
                stale_rounds = 0;
            } else {
                stale_rounds += 1;
                if stale_rounds > 50 {
                    continue 'attempt;
                }
            }
        }
        return Graph::new(n, edges);
    }
    Err(GraphError::GenerationFailed {
        attempts: REGULAR_MAX_ATTEMPTS,
        reason: format!("pairing model for n={n} d={d} kept getting stuck"),
    })
}

/// Parsed generator expression, e.g. `cycle(12)` or `gnp(24,0.3)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum GeneratorSpec {
    Path { n: usize },
    Cycle { n: usize },
    Complete { n: usize },
    Star { n: usize },
    CompleteBipartite { a: usize, b: usize },
    Hypercube { dim: usize },
    Petersen,
    Gnp { n: usize, p: f64 },
    RandomRegular { n: usize, d: usize },
}

impl GeneratorSpec {
    /// Parses `kind` or `kind(arg, ...)` with kind-specific positional args.
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let text = text.trim();
        let bad = |msg: &str| GraphError::InvalidParameter(format!("`{text}`: {msg}"));
        let (kind, args): (&str, Vec<&str>) = match text.find('(') {
            None => (text, Vec::new()),
            Some(open) => {
                if !text.ends_with(')') {
                    return Err(bad("missing closing parenthesis"));
                }
                let inner = &text[open + 1..text.len() - 1];
                let args = if inner.trim().is_empty() {
                    Vec::new()
                } else {
                    inner.split(',').map(str::trim).collect()
                };
                (&text[..open], args)
            }
        };
        let want = |k: usize| -> Result<(), GraphError> {
            if args.len() == k {
                Ok(())
            } else {
                Err(bad(&format!("expected {k} argument(s), got {}", args.len())))
            }
        };
        let usize_arg = |i: usize| -> Result<usize, GraphError> {
            args[i].parse().map_err(|_| bad(&format!("bad integer `{}`", args[i])))
        };
        match kind {
            "path" => {
                want(1)?;
                Ok(GeneratorSpec::Path { n: usize_arg(0)? })
            }
            "cycle" => {
                want(1)?;
                Ok(GeneratorSpec::Cycle { n: usize_arg(0)? })
            }
            "complete" => {
                want(1)?;
                Ok(GeneratorSpec::Complete { n: usize_arg(0)? })
            }
            "star" => {
                want(1)?;
                Ok(GeneratorSpec::Star { n: usize_arg(0)? })
            }
            "complete_bipartite" => {
                want(2)?;
                Ok(GeneratorSpec::CompleteBipartite {
                    a: usize_arg(0)?,
                    b: usize_arg(1)?,
                })
            }
            "hypercube" => {
                want(1)?;
                Ok(GeneratorSpec::Hypercube { dim: usize_arg(0)? })
            }
            "petersen" => {
                want(0)?;
                Ok(GeneratorSpec::Petersen)
            }
            "gnp" => {
                want(2)?;
                let p: f64 = args[1]
                    .parse()
                    .map_err(|_| bad(&format!("bad probability `{}`", args[1])))?;
                Ok(GeneratorSpec::Gnp { n: usize_arg(0)?, p })
            }
            "random_regular" => {
                want(2)?;
                Ok(GeneratorSpec::RandomRegular {
                    n: usize_arg(0)?,
                    d: usize_arg(1)?,
                })
            }
            other => Err(bad(&format!("unknown generator `{other}`"))),
        }
    }

    /// Builds the graph. `seed` only matters for the random kinds.
    pub fn build(&self, seed: u64) -> Result<Graph, GraphError> {
        match *self {
            GeneratorSpec::Path { n } => path(n),
            GeneratorSpec::Cycle { n } => cycle(n),
            GeneratorSpec::Complete { n } => complete(n),
            GeneratorSpec::Star { n } => star(n),
            GeneratorSpec::CompleteBipartite { a, b } => complete_bipartite(a, b),
            GeneratorSpec::Hypercube { dim } => hypercube(dim),
            GeneratorSpec::Petersen => Ok(petersen()),
            GeneratorSpec::Gnp { n, p } => gnp(n, p, seed),
            GeneratorSpec::RandomRegular { n, d } => random_regular(n, d, seed),
        }
    }

    pub fn is_random(&self) -> bool {
        matches!(self, GeneratorSpec::Gnp { .. } | GeneratorSpec::RandomRegular { .. })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_c4() {
        let g = cycle(4).unwrap();
        assert_eq!(g.edge_count(), 4);
        assert!(g.degrees().iter().all(|&d| d == 2));
    }

    #[test]
    fn petersen_shape() {
        let g = petersen();
        assert_eq!(g.n(), 10);
        assert_eq!(g.edge_count(), 15);
        assert!(g.degrees().iter().all(|&d| d == 3));
    }

    #[test]
    fn complete_k4() {
        let g = complete(4).unwrap();
        assert_eq!(g.edge_count(), 6);
        assert!(g.degrees().iter().all(|&d| d == 3));
    }

    #[test]
    fn hypercube_q3() {
        let g = hypercube(3).unwrap();
        assert_eq!(g.n(), 8);
        assert_eq!(g.edge_count(), 12);
        assert!(g.degrees().iter().all(|&d| d == 3));
    }

    #[test]
    fn random_regular_rejects_odd_product() {
        assert!(matches!(
            random_regular(5, 3, 1),
            Err(GraphError::InvalidParameter(_))
        ));
    }

    #[test]
    fn random_regular_is_regular() {
        for seed in 0..5 {
            let g = random_regular(16, 3, seed).unwrap();
            assert!(g.degrees().iter().all(|&d| d == 3));
            assert_eq!(g.edge_count(), 24);
        }
    }

    #[test]
    fn random_regular_dense_degree_terminates() {
        let g = random_regular(64, 8, 7).unwrap();
        assert!(g.degrees().iter().all(|&d| d == 8));
    }

    #[test]
    fn gnp_rejects_bad_p() {
        assert!(matches!(gnp(5, 0.0, 1), Err(GraphError::InvalidParameter(_))));
        assert!(matches!(gnp(5, 1.5, 1), Err(GraphError::InvalidParameter(_))));
    }

    #[test]
    fn generators_reproducible_for_fixed_seed() {
        let a = gnp(20, 0.3, 42).unwrap();
        let b = gnp(20, 0.3, 42).unwrap();
        assert_eq!(a.to_edge_list_string(), b.to_edge_list_string());
        let c = random_regular(20, 4, 42).unwrap();
        let d = random_regular(20, 4, 42).unwrap();
        assert_eq!(c.to_edge_list_string(), d.to_edge_list_string());
        assert_ne!(
            gnp(20, 0.3, 42).unwrap().to_edge_list_string(),
            gnp(20, 0.3, 43).unwrap().to_edge_list_string()
        );
    }

    #[test]
    fn spec_parse_roundtrip() {
        assert_eq!(
            GeneratorSpec::parse("cycle(12)").unwrap(),
            GeneratorSpec::Cycle { n: 12 }
        );
        assert_eq!(GeneratorSpec::parse("petersen").unwrap(), GeneratorSpec::Petersen);
        assert_eq!(
            GeneratorSpec::parse(" gnp(24, 0.3) ").unwrap(),
            GeneratorSpec::Gnp { n: 24, p: 0.3 }
        );
        assert!(GeneratorSpec::parse("blob(3)").is_err());
        assert!(GeneratorSpec::parse("cycle(3,4)").is_err());
        assert!(GeneratorSpec::parse("cycle(x)").is_err());
    }
}
