//! Slow reference implementations, written straight from the definitions and
//! sharing no code with the library beyond the graph type.
#![allow(dead_code)]

use indicolor_core::graph::Graph;

/// Ann wins iff she can get every vertex coloured: some uncoloured vertex has
/// a proper colour, and every proper colour Ben picks there still leaves Ann
/// winning. No memo, no colour symmetry, no early block detection.
pub fn brute_ann_wins(g: &Graph, k: usize) -> bool {
    let mut colors = vec![0usize; g.n()];
    ann_turn(g, k, &mut colors)
}

fn proper_choices(g: &Graph, k: usize, colors: &[usize], v: usize) -> Vec<usize> {
    (1..=k).filter(|&c| (0..g.n()).all(|u| !(g.has_edge(u, v) && colors[u] == c))).collect()
}

fn ann_turn(g: &Graph, k: usize, colors: &mut Vec<usize>) -> bool {
    let open: Vec<usize> = (0..g.n()).filter(|&v| colors[v] == 0).collect();
    if open.is_empty() {
        return true;
    }
    open.into_iter().any(|v| {
        let choices = proper_choices(g, k, colors, v);
        !choices.is_empty()
            && choices.into_iter().all(|c| {
                colors[v] = c;
                let r = ann_turn(g, k, colors);
                colors[v] = 0;
                r
            })
    })
}

/// Smallest k with a proper k-colouring, by trying every assignment.
pub fn brute_chromatic(g: &Graph) -> usize {
    let n = g.n();
    (1..=n.max(1))
        .find(|&k| {
            let total = k.pow(n as u32);
            (0..total).any(|mut code| {
                let mut c = vec![0; n];
                for slot in c.iter_mut() {
                    *slot = code % k;
                    code /= k;
                }
                (0..n).all(|u| (0..u).all(|w| !g.has_edge(u, w) || c[u] != c[w]))
            })
        })
        .unwrap_or(0)
}

/// 1 + min over vertex orders of the largest number of earlier neighbours.
pub fn brute_coloring_number(g: &Graph) -> usize {
    let n = g.n();
    let mut order: Vec<usize> = (0..n).collect();
    let mut best = usize::MAX;
    permute(&mut order, 0, &mut |ord| {
        let worst = (0..n).map(|i| (0..i).filter(|&j| g.has_edge(ord[i], ord[j])).count()).max().unwrap_or(0);
        best = best.min(worst + 1);
    });
    best
}

fn permute(a: &mut Vec<usize>, i: usize, f: &mut impl FnMut(&[usize])) {
    if i == a.len() {
        f(a);
        return;
    }
    for j in i..a.len() {
        a.swap(i, j);
        permute(a, i + 1, f);
        a.swap(i, j);
    }
}

/// Size of a largest clique, by subsets.
pub fn brute_clique(g: &Graph) -> usize {
    let n = g.n();
    (0u32..1 << n)
        .filter(|&s| {
            (0..n).all(|u| (0..u).all(|w| s & (1 << u) == 0 || s & (1 << w) == 0 || g.has_edge(u, w)))
        })
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Does some injective map send `p` onto an induced copy in `g`?
pub fn brute_contains_induced(g: &Graph, p: &Graph) -> bool {
    fn go(g: &Graph, p: &Graph, map: &mut Vec<usize>) -> bool {
        let i = map.len();
        if i == p.n() {
            return true;
        }
        for v in 0..g.n() {
            if map.contains(&v) {
                continue;
            }
            if (0..i).all(|j| p.has_edge(i, j) == g.has_edge(v, map[j])) {
                map.push(v);
                if go(g, p, map) {
                    return true;
                }
                map.pop();
            }
        }
        false
    }
    go(g, p, &mut Vec::new())
}
