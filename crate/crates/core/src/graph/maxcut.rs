use super::{Graph, Label};
use crate::error::{Error, Result};

/// Largest vertex count accepted by [`brute_force_maxcut`].
pub const DEFAULT_N_EXACT: u32 = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxCut {
    pub value: usize,
    pub assignment: Vec<Label>,
}

pub fn brute_force_maxcut(g: &Graph) -> Result<MaxCut> {
    brute_force_maxcut_capped(g, DEFAULT_N_EXACT)
}

/// Exhaustive MAX-CUT over the `2^(n-1)` bipartitions with vertex 0 on the `+` side.
///
/// Ties go to the lexicographically smallest assignment, reading vertices in id
/// order with `+` before `-`. Bipartitions are walked in Gray-code order so each
/// step flips one vertex and updates the cut in constant time.
pub fn brute_force_maxcut_capped(g: &Graph, n_exact: u32) -> Result<MaxCut> {
    let n = g.n;
    if n > n_exact || n > 32 {
        return Err(Error::Capacity(format!(
            "brute-force MAX-CUT supports n <= {n_exact}, got n = {n}"
        )));
    }
    if n <= 1 {
        return Ok(MaxCut {
            value: 0,
            assignment: vec![Label::Plus; n as usize],
        });
    }
    let mut adj = vec![0u32; n as usize];
    for e in g.edges() {
        adj[e.u as usize] |= 1 << e.v;
        adj[e.v as usize] |= 1 << e.u;
    }

    // `minus` holds the vertices on the `-` side; vertex 0 never moves.
    let lex_key = |minus: u32| minus.reverse_bits() >> (32 - n);
    let mut minus = 0u32;
    let mut cut = 0i64;
    let mut best = (0i64, minus);
    let free = n - 1;
    for step in 1u64..(1u64 << free) {
        let v = step.trailing_zeros() + 1;
        let bit = 1u32 << v;
        let same = if minus & bit != 0 {
            (adj[v as usize] & minus).count_ones()
        } else {
            (adj[v as usize] & !minus).count_ones()
        } as i64;
        let other = adj[v as usize].count_ones() as i64 - same;
        cut += same - other;
        minus ^= bit;
        if cut > best.0 || (cut == best.0 && lex_key(minus) < lex_key(best.1)) {
            best = (cut, minus);
        }
    }

    let assignment = (0..n)
        .map(|v| {
            if best.1 & (1 << v) != 0 {
                Label::Minus
            } else {
                Label::Plus
            }
        })
        .collect();
    Ok(MaxCut {
        value: best.0 as usize,
        assignment,
    })
}
