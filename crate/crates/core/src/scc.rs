//! Strongly connected components of small directed graphs given as
//! successor lists.

/// Tarjan's algorithm, iterative. Components are returned sinks first
/// (reverse topological order of the condensation), each sorted.
pub(crate) fn tarjan(graph: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = graph.len();
    const UNSET: usize = usize::MAX;
    let mut index = vec![UNSET; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comps = Vec::new();
    let mut next = 0;

    for root in 0..n {
        if index[root] != UNSET {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut edge)) = call.last_mut() {
            if *edge < graph[v].len() {
                let w = graph[v][*edge];
                *edge += 1;
                if index[w] == UNSET {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    comps.push(comp);
                }
            }
        }
    }
    comps
}

/// Components in topological order (sources first), each tagged with
/// whether it is recurrent (no edge leaves it).
pub(crate) fn classify(graph: &[Vec<usize>]) -> Vec<(Vec<usize>, bool)> {
    let mut comps = tarjan(graph);
    comps.reverse();
    let mut comp_of = vec![0; graph.len()];
    for (c, comp) in comps.iter().enumerate() {
        for &v in comp {
            comp_of[v] = c;
        }
    }
    comps
        .into_iter()
        .enumerate()
        .map(|(c, comp)| {
            let recurrent = comp.iter().all(|&v| graph[v].iter().all(|&w| comp_of[w] == c));
            (comp, recurrent)
        })
        .collect()
}
