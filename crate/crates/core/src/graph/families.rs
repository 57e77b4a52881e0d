use super::{bit, full_mask, Graph, GraphError};

/// Named graph families.
///
/// Numbering conventions:
/// - `Path(n)`: `0 - 1 - ... - n-1`.
/// - `Cycle(n)`: the path plus `n-1 - 0`.
/// - `Complete(n)`: vertices `0..n`.
/// - `Multipartite(parts)`: parts are consecutive blocks in the given order.
/// - `Star(t)`: `K_{1,t}` with the centre at 0.
/// - `Paw`: triangle `0,1,2` with pendant `3` on `2`.
/// - `Kite`: diamond `0,1,2,3` (`0` and `3` non-adjacent) with pendant `4` on `3`.
/// - `Bull`: triangle `0,1,2` with pendants `3` on `1` and `4` on `2`.
/// - `Dart`: diamond `0,1,2,3` with pendant `4` on the degree-3 vertex `1`.
/// - `Claw`: `K_{1,3}`, centre 0.
/// - `CoP5`: complement of `P_5` (house), numbered as the complement of `Path(5)`.
/// - `CoP2UP3`: complement of `P_2 ∪ P_3` with `P_2 = 0-1` and `P_3 = 2-3-4`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    Multipartite(Vec<usize>),
    Star(usize),
    Paw,
    Kite,
    Bull,
    Dart,
    Claw,
    CoP5,
    CoP2UP3,
}

impl Family {
    /// Parses a family tag and its integer parameters.
    ///
    /// `K` with a single parameter is the complete graph, with two or more it
    /// is the complete multipartite graph on those part sizes.
    pub fn parse(tag: &str, params: &[usize]) -> Result<Family, GraphError> {
        let lower = tag.to_ascii_lowercase();
        let one = |name: &str| -> Result<usize, GraphError> {
            match params {
                [n] => Ok(*n),
                _ => Err(GraphError::InvalidSize {
                    family: name.into(),
                    reason: format!("expected one size parameter, got {}", params.len()),
                }),
            }
        };
        let none = |fam: Family| -> Result<Family, GraphError> {
            if params.is_empty() {
                Ok(fam)
            } else {
                Err(GraphError::InvalidSize {
                    family: tag.into(),
                    reason: "takes no parameters".into(),
                })
            }
        };
        match lower.as_str() {
            "p" | "path" => Ok(Family::Path(one("P")?)),
            "c" | "cycle" => Ok(Family::Cycle(one("C")?)),
            "k" | "complete" if params.len() <= 1 => Ok(Family::Complete(one("K")?)),
            "k" | "complete" | "multipartite" => Ok(Family::Multipartite(params.to_vec())),
            "star" => Ok(Family::Star(one("star")?)),
            "paw" => none(Family::Paw),
            "kite" => none(Family::Kite),
            "bull" => none(Family::Bull),
            "dart" => none(Family::Dart),
            "claw" => none(Family::Claw),
            "co-p5" | "house" => none(Family::CoP5),
            "co-p2up3" | "co-p2-u-p3" => none(Family::CoP2UP3),
            _ => Err(GraphError::UnknownFamily(tag.into())),
        }
    }

    pub fn build(&self) -> Result<Graph, GraphError> {
        let bad = |family: &str, reason: &str| GraphError::InvalidSize {
            family: family.into(),
            reason: reason.into(),
        };
        match self {
            Family::Path(n) => {
                if *n == 0 {
                    return Err(bad("P", "n must be at least 1"));
                }
                let edges: Vec<_> = (1..*n).map(|i| (i - 1, i)).collect();
                Graph::new(*n, &edges)
            }
            Family::Cycle(n) => {
                if *n < 3 {
                    return Err(bad("C", "n must be at least 3"));
                }
                let mut edges: Vec<_> = (1..*n).map(|i| (i - 1, i)).collect();
                edges.push((n - 1, 0));
                Graph::new(*n, &edges)
            }
            Family::Complete(n) => {
                if *n == 0 {
                    return Err(bad("K", "n must be at least 1"));
                }
                if *n > super::MAX_VERTICES {
                    return Err(GraphError::TooLarge { n: *n, max: super::MAX_VERTICES });
                }
                Ok(complete(*n))
            }
            Family::Multipartite(parts) => {
                if parts.is_empty() || parts.contains(&0) {
                    return Err(bad("K", "every part must have at least 1 vertex"));
                }
                let n: usize = parts.iter().sum();
                let mut edges = Vec::new();
                let mut start = 0;
                let mut owner = Vec::with_capacity(n);
                for (i, &p) in parts.iter().enumerate() {
                    owner.extend(std::iter::repeat_n(i, p));
                    start += p;
                }
                debug_assert_eq!(start, n);
                for u in 0..n {
                    for v in u + 1..n {
                        if owner[u] != owner[v] {
                            edges.push((u, v));
                        }
                    }
                }
                Graph::new(n, &edges)
            }
            Family::Star(t) => {
                if *t == 0 {
                    return Err(bad("star", "t must be at least 1"));
                }
                let edges: Vec<_> = (1..=*t).map(|i| (0, i)).collect();
                Graph::new(t + 1, &edges)
            }
            Family::Paw => Graph::new(4, &[(0, 1), (0, 2), (1, 2), (2, 3)]),
            Family::Kite => Graph::new(5, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (3, 4)]),
            Family::Bull => Graph::new(5, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 4)]),
            Family::Dart => Graph::new(5, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (1, 4)]),
            Family::Claw => Graph::new(4, &[(0, 1), (0, 2), (0, 3)]),
            Family::CoP5 => Ok(super::complement(&Family::Path(5).build()?)),
            Family::CoP2UP3 => {
                let p2p3 = Graph::new(5, &[(0, 1), (2, 3), (3, 4)])?;
                Ok(super::complement(&p2p3))
            }
        }
    }
}

pub(crate) fn complete(n: usize) -> Graph {
    let all = full_mask(n);
    Graph::from_masks(n, (0..n).map(|v| all & !bit(v)).collect())
}

/// Builds a member of a named family, e.g. `("P", [4])`, `("K", [2, 3])`,
/// `("paw", [])`.
pub fn family_generator(tag: &str, params: &[usize]) -> Result<Graph, GraphError> {
    Family::parse(tag, params)?.build()
}
