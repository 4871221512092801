use num_integer::Integer;
use serde::Serialize;

use crate::algebra::Truncation;
use crate::error::{Error, Result};

/// Strongly connected components of a cutoff and the condensation DAG.
///
/// Classes are numbered by their smallest vertex index, so class 0 contains the unit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SccDecomposition {
    pub class_of: Vec<usize>,
    pub classes: Vec<Vec<usize>>,
    /// `dag[c]` lists the classes reachable from `c` by one edge, sorted, without `c` itself.
    pub dag: Vec<Vec<usize>>,
}

impl SccDecomposition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Classes in an order where every DAG edge goes forward.
    pub fn topological_order(&self) -> Vec<usize> {
        let mut indegree = vec![0usize; self.len()];
        for succ in &self.dag {
            for &d in succ {
                indegree[d] += 1;
            }
        }
        let mut stack: Vec<usize> = (0..self.len()).rev().filter(|&c| indegree[c] == 0).collect();
        let mut order = Vec::with_capacity(self.len());
        while let Some(c) = stack.pop() {
            order.push(c);
            for &d in self.dag[c].iter().rev() {
                indegree[d] -= 1;
                if indegree[d] == 0 {
                    stack.push(d);
                }
            }
        }
        order
    }
}

/// Iterative Tarjan on out-neighbour lists.
pub fn scc_of_adjacency(adj: &[Vec<usize>]) -> SccDecomposition {
    let n = adj.len();
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut raw_class = vec![UNSEEN; n];
    let mut raw_count = 0usize;
    let mut counter = 0usize;
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut next)) = call.last_mut() {
            if *next < adj[v].len() {
                let w = adj[v][*next];
                *next += 1;
                if index[w] == UNSEEN {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack[w] = false;
                    raw_class[w] = raw_count;
                    if w == v {
                        break;
                    }
                }
                raw_count += 1;
            }
        }
    }

    let mut first_vertex = vec![UNSEEN; raw_count];
    for v in 0..n {
        let c = raw_class[v];
        if first_vertex[c] == UNSEEN {
            first_vertex[c] = v;
        }
    }
    let mut order: Vec<usize> = (0..raw_count).collect();
    order.sort_by_key(|&c| first_vertex[c]);
    let mut renumber = vec![0usize; raw_count];
    for (new, &old) in order.iter().enumerate() {
        renumber[old] = new;
    }
    let class_of: Vec<usize> = raw_class.iter().map(|&c| renumber[c]).collect();
    let mut classes = vec![Vec::new(); raw_count];
    for v in 0..n {
        classes[class_of[v]].push(v);
    }
    let mut dag = vec![Vec::new(); raw_count];
    for v in 0..n {
        for &w in &adj[v] {
            let (a, b) = (class_of[v], class_of[w]);
            if a != b {
                dag[a].push(b);
            }
        }
    }
    for succ in &mut dag {
        succ.sort_unstable();
        succ.dedup();
    }
    SccDecomposition { class_of, classes, dag }
}

pub fn scc_decomposition(t: &Truncation) -> SccDecomposition {
    scc_of_adjacency(&t.adjacency())
}

/// Whether the class carries a closed walk (more than one vertex, or a loop).
pub fn class_has_cycle(adj: &[Vec<usize>], class: &[usize]) -> bool {
    class.len() > 1 || adj[class[0]].contains(&class[0])
}

/// Gcd of closed-walk lengths inside a class, from BFS levels restricted to the class.
pub fn class_period(adj: &[Vec<usize>], scc: &SccDecomposition, class: usize) -> Result<usize> {
    let members = &scc.classes[class];
    if !class_has_cycle(adj, members) {
        return Err(Error::AcyclicClass { class });
    }
    let mut level: std::collections::HashMap<usize, i64> = std::collections::HashMap::new();
    let mut queue = std::collections::VecDeque::new();
    level.insert(members[0], 0);
    queue.push_back(members[0]);
    let mut g: i64 = 0;
    while let Some(u) = queue.pop_front() {
        let lu = level[&u];
        for &v in &adj[u] {
            if scc.class_of[v] != class {
                continue;
            }
            match level.get(&v) {
                Some(&lv) => g = g.gcd(&(lu + 1 - lv)),
                None => {
                    level.insert(v, lu + 1);
                    queue.push_back(v);
                }
            }
        }
    }
    Ok(g.unsigned_abs() as usize)
}

/// Period of class `class` of the cutoff.
pub fn period(t: &Truncation, class: usize) -> Result<usize> {
    let adj = t.adjacency();
    let scc = scc_of_adjacency(&adj);
    if class >= scc.len() {
        return Err(Error::InvalidParameter(format!("class {class} out of range ({} classes)", scc.len())));
    }
    class_period(&adj, &scc, class)
}
