//! Exhaustive 3-coloring oracles for small graphs, and an independent
//! chromatic-polynomial evaluation to cross-check their counts.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

pub const ORACLE_LIMIT: usize = 25;
pub const POLYNOMIAL_LIMIT: usize = 12;

fn check_size(g: &Graph, limit: usize) -> Result<()> {
    if g.n() > limit {
        Err(Error::OracleRefusal { n: g.n(), limit })
    } else {
        Ok(())
    }
}

/// Calls `visit` with every proper 3-coloring, in lexicographic order.
/// Stops early when `visit` returns `false`.
pub fn for_each_coloring(g: &Graph, mut visit: impl FnMut(&[u8]) -> bool) -> Result<()> {
    check_size(g, ORACLE_LIMIT)?;
    let n = g.n();
    let mut colors = vec![0u8; n];
    fn go(g: &Graph, v: usize, colors: &mut [u8], visit: &mut dyn FnMut(&[u8]) -> bool) -> bool {
        if v == g.n() {
            return visit(colors);
        }
        for c in 0..3 {
            if g.adj(v).iter().any(|&w| (w as usize) < v && colors[w as usize] == c) {
                continue;
            }
            colors[v] = c;
            if !go(g, v + 1, colors, visit) {
                return false;
            }
        }
        true
    }
    go(g, 0, &mut colors, &mut visit);
    Ok(())
}

/// All proper 3-colorings. The list can have up to `3^n` entries.
pub fn brute_force_colorings(g: &Graph) -> Result<Vec<Vec<u8>>> {
    let mut out = Vec::new();
    for_each_coloring(g, |c| {
        out.push(c.to_vec());
        true
    })?;
    Ok(out)
}

/// Connected components, each as a sorted vertex list.
fn components(g: &Graph) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.n()];
    let mut out = Vec::new();
    for s in 0..g.n() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            for &w in g.adj(comp[i]) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    comp.push(w as usize);
                }
            }
            i += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Number of proper 3-colorings: a product over components, each counted
/// with its first vertex fixed and multiplied by 3.
pub fn count_colorings(g: &Graph) -> Result<u64> {
    check_size(g, ORACLE_LIMIT)?;
    let mut total: u64 = 1;
    for comp in components(g) {
        let sub = g.induced(&g.set_of(comp.iter().copied()))?.graph;
        let mut count = 0u64;
        let mut colors = vec![0u8; sub.n()];
        fn go(g: &Graph, v: usize, colors: &mut [u8], count: &mut u64) {
            if v == g.n() {
                *count += 1;
                return;
            }
            let range = if v == 0 { 0..1 } else { 0..3 };
            for c in range {
                if g.adj(v).iter().any(|&w| (w as usize) < v && colors[w as usize] == c) {
                    continue;
                }
                colors[v] = c;
                go(g, v + 1, colors, count);
            }
        }
        go(&sub, 0, &mut colors, &mut count);
        total *= 3 * count;
    }
    Ok(total)
}

/// Searches for a proper 3-coloring of `g` plus the `extra` edges in which
/// every vertex of `same` gets one color.
pub fn find_coloring(g: &Graph, extra: &[(usize, usize)], same: &[usize]) -> Result<Option<Vec<u8>>> {
    check_size(g, ORACLE_LIMIT)?;
    let n = g.n();
    let mut adj: Vec<Vec<usize>> = (0..n).map(|v| g.adj(v).iter().map(|&w| w as usize).collect()).collect();
    for &(u, v) in extra {
        if u >= n || v >= n {
            return Err(Error::VertexOutOfRange { vertex: u.max(v), n });
        }
        if u == v {
            return Ok(None);
        }
        adj[u].push(v);
        adj[v].push(u);
    }
    // Most constrained first: by degree, ties by id.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(adj[v].len()), v));
    let in_same: Vec<bool> = (0..n).map(|v| same.contains(&v)).collect();
    let mut colors: Vec<Option<u8>> = vec![None; n];
    let mut same_color: Option<u8> = None;

    fn go(
        i: usize,
        order: &[usize],
        adj: &[Vec<usize>],
        in_same: &[bool],
        colors: &mut [Option<u8>],
        same_color: &mut Option<u8>,
    ) -> bool {
        let Some(&v) = order.get(i) else { return true };
        for c in 0..3u8 {
            if in_same[v] && same_color.is_some_and(|s| s != c) {
                continue;
            }
            if adj[v].iter().any(|&w| colors[w] == Some(c)) {
                continue;
            }
            colors[v] = Some(c);
            let fixed_here = in_same[v] && same_color.is_none();
            if fixed_here {
                *same_color = Some(c);
            }
            if go(i + 1, order, adj, in_same, colors, same_color) {
                return true;
            }
            if fixed_here {
                *same_color = None;
            }
            colors[v] = None;
        }
        false
    }
    if go(0, &order, &adj, &in_same, &mut colors, &mut same_color) {
        Ok(Some(colors.into_iter().map(|c| c.expect("complete")).collect()))
    } else {
        Ok(None)
    }
}

pub fn is_three_colorable(g: &Graph) -> Result<bool> {
    Ok(find_coloring(g, &[], &[])?.is_some())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails,
    /// The condition is true only because no coloring meets its premise.
    Vacuous,
}

impl Verdict {
    pub fn holds(self) -> bool {
        self != Verdict::Fails
    }
}

/// Whether no proper 3-coloring makes `x` monochromatic.
pub fn oracle_is_multichromatic(g: &Graph, x: &VertexSet) -> Result<bool> {
    if !is_three_colorable(g)? {
        return Err(Error::NotThreeColorable);
    }
    Ok(find_coloring(g, &[], &x.to_vec())?.is_none())
}

/// Whether every proper 3-coloring with `c(r0) ≠ c(t)` makes `x`
/// monochromatic.
pub fn oracle_mono_given_diff(g: &Graph, x: &VertexSet, r0: usize, t: usize) -> Result<Verdict> {
    if !is_three_colorable(g)? {
        return Err(Error::NotThreeColorable);
    }
    if find_coloring(g, &[(r0, t)], &[])?.is_none() {
        return Ok(Verdict::Vacuous);
    }
    let members = x.to_vec();
    let Some((&first, rest)) = members.split_first() else { return Ok(Verdict::Holds) };
    for &y in rest {
        if find_coloring(g, &[(r0, t), (first, y)], &[])?.is_some() {
            return Ok(Verdict::Fails);
        }
    }
    Ok(Verdict::Holds)
}

/// Whether some proper 3-coloring makes `x` monochromatic.
pub fn oracle_mono_somewhere(g: &Graph, x: &VertexSet) -> Result<bool> {
    Ok(find_coloring(g, &[], &x.to_vec())?.is_some())
}

/// `P(G, 3)` by deletion and contraction over adjacency bitmasks, for at
/// most [`POLYNOMIAL_LIMIT`] vertices.
pub fn chromatic_polynomial_at_3(g: &Graph) -> Result<u64> {
    check_size(g, POLYNOMIAL_LIMIT)?;
    let masks: Vec<u16> =
        (0..g.n()).map(|v| g.adj(v).iter().fold(0u16, |m, &w| m | (1 << w))).collect();
    let mut memo = HashMap::new();
    let value = poly(masks, &mut memo);
    Ok(u64::try_from(value).expect("chromatic polynomial at 3 is non-negative"))
}

fn poly(masks: Vec<u16>, memo: &mut HashMap<Vec<u16>, i64>) -> i64 {
    let n = masks.len();
    if n == 0 {
        return 1;
    }
    // Isolated or pendant vertex: factor 3 or 2.
    if let Some(v) = (0..n).find(|&v| masks[v].count_ones() <= 1) {
        let factor = 3 - masks[v].count_ones() as i64;
        return factor * poly(remove_vertex(&masks, v), memo);
    }
    if let Some(&hit) = memo.get(&masks) {
        return hit;
    }
    let u = (0..n).find(|&u| masks[u] != 0).expect("some edge");
    let v = masks[u].trailing_zeros() as usize;
    let mut deleted = masks.clone();
    deleted[u] &= !(1 << v);
    deleted[v] &= !(1 << u);
    let mut merged = deleted.clone();
    merged[u] |= merged[v];
    for w in 0..n {
        if merged[w] & (1 << v) != 0 {
            merged[w] |= 1 << u;
        }
    }
    let value = poly(deleted, memo) - poly(remove_vertex(&merged, v), memo);
    memo.insert(masks, value);
    value
}

fn remove_vertex(masks: &[u16], v: usize) -> Vec<u16> {
    let low = (1u16 << v) - 1;
    masks
        .iter()
        .enumerate()
        .filter(|&(w, _)| w != v)
        .map(|(_, &m)| (m & low) | ((m >> 1) & !low))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    #[test]
    fn small_counts() {
        let triangle = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(brute_force_colorings(&triangle).unwrap().len(), 6);
        assert_eq!(count_colorings(&Graph::empty(2)).unwrap(), 9);
        assert_eq!(count_colorings(&path(3)).unwrap(), 12);
        assert_eq!(brute_force_colorings(&path(3)).unwrap().len(), 12);
        let k4 = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(count_colorings(&k4).unwrap(), 0);
    }

    #[test]
    fn polynomial_matches_known_values() {
        let c5 = Graph::from_edges(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        // (k-1)^5 - (k-1) at k = 3.
        assert_eq!(chromatic_polynomial_at_3(&c5).unwrap(), 30);
        assert_eq!(count_colorings(&c5).unwrap(), 30);
        assert_eq!(chromatic_polynomial_at_3(&Graph::empty(4)).unwrap(), 81);
        assert!(matches!(chromatic_polynomial_at_3(&Graph::empty(13)), Err(Error::OracleRefusal { .. })));
    }

    #[test]
    fn multichromatic_examples() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 0), (4, 1), (5, 2)]).unwrap();
        assert!(oracle_is_multichromatic(&g, &g.set_of([3, 4, 5])).unwrap());
        assert!(!oracle_is_multichromatic(&g, &g.set_of([3])).unwrap());
        let k4 = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(oracle_is_multichromatic(&k4, &k4.set_of([0])), Err(Error::NotThreeColorable));
    }

    #[test]
    fn mono_given_diff_examples() {
        let k3 = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(oracle_mono_given_diff(&k3, &k3.set_of([0]), 1, 2).unwrap(), Verdict::Holds);
        // Path 0-1-2: with c(0) ≠ c(2), the set {0, 2} is never monochromatic.
        let p = path(3);
        assert_eq!(oracle_mono_given_diff(&p, &p.set_of([0, 2]), 0, 2).unwrap(), Verdict::Fails);
        assert_eq!(oracle_mono_given_diff(&p, &p.set_of([0, 2]), 1, 1).unwrap(), Verdict::Vacuous);
    }

    #[test]
    fn refuses_large_graphs() {
        assert!(matches!(count_colorings(&Graph::empty(26)), Err(Error::OracleRefusal { n: 26, limit: 25 })));
    }
}
