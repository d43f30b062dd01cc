//! 2-SAT via the implication graph and Tarjan's strongly connected components.

/// A literal over variable `var`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lit {
    pub var: usize,
    pub positive: bool,
}

impl Lit {
    pub fn pos(var: usize) -> Self {
        Lit { var, positive: true }
    }

    pub fn neg(var: usize) -> Self {
        Lit { var, positive: false }
    }

    pub fn negate(self) -> Self {
        Lit { var: self.var, positive: !self.positive }
    }

    fn node(self) -> usize {
        2 * self.var + usize::from(!self.positive)
    }
}

/// Strongly connected components of `adj`, numbered in the order Tarjan's
/// algorithm closes them (a reverse topological order of the condensation).
pub fn tarjan_scc(adj: &[Vec<usize>]) -> Vec<usize> {
    const UNSET: usize = usize::MAX;
    let n = adj.len();
    let mut index = vec![UNSET; n];
    let mut low = vec![0; n];
    let mut comp = vec![UNSET; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut next_comp = 0;
    // (vertex, next edge position)
    let mut call: Vec<(usize, usize)> = Vec::new();
    for root in 0..n {
        if index[root] != UNSET {
            continue;
        }
        call.push((root, 0));
        while let Some(&mut (u, ref mut pos)) = call.last_mut() {
            if *pos == 0 && index[u] == UNSET {
                index[u] = next_index;
                low[u] = next_index;
                next_index += 1;
                stack.push(u);
                on_stack[u] = true;
            }
            if *pos < adj[u].len() {
                let v = adj[u][*pos];
                *pos += 1;
                if index[v] == UNSET {
                    call.push((v, 0));
                } else if on_stack[v] {
                    low[u] = low[u].min(index[v]);
                }
                continue;
            }
            call.pop();
            if low[u] == index[u] {
                loop {
                    let v = stack.pop().expect("tarjan stack underflow");
                    on_stack[v] = false;
                    comp[v] = next_comp;
                    if v == u {
                        break;
                    }
                }
                next_comp += 1;
            }
            if let Some(&(p, _)) = call.last() {
                low[p] = low[p].min(low[u]);
            }
        }
    }
    comp
}

/// Solves a conjunction of 2-clauses over `n` variables. Returns a
/// satisfying assignment, or `None` if there is none.
pub fn solve(n: usize, clauses: &[[Lit; 2]]) -> Option<Vec<bool>> {
    let mut adj = vec![Vec::new(); 2 * n];
    for &[a, b] in clauses {
        adj[a.negate().node()].push(b.node());
        adj[b.negate().node()].push(a.node());
    }
    let comp = tarjan_scc(&adj);
    let mut out = Vec::with_capacity(n);
    for v in 0..n {
        let (t, f) = (comp[Lit::pos(v).node()], comp[Lit::neg(v).node()]);
        if t == f {
            return None;
        }
        out.push(t < f);
    }
    Some(out)
}
