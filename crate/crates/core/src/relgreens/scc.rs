/// Strongly connected components of the graph on `0..nodes` whose node `v`
/// has successors `next(v, k)` for `k < degree`. Returns the component
/// index of every node; components are numbered in order of their least
/// node.
pub fn strongly_connected_components(nodes: usize, degree: usize, next: impl Fn(u32, usize) -> u32) -> Vec<u32> {
    const UNSEEN: u32 = u32::MAX;
    let mut index = vec![UNSEEN; nodes];
    let mut low = vec![0u32; nodes];
    let mut on_stack = vec![false; nodes];
    let mut comp = vec![UNSEEN; nodes];
    let mut stack: Vec<u32> = Vec::new();
    // call stack of (node, next successor position)
    let mut calls: Vec<(u32, usize)> = Vec::new();
    let mut counter = 0u32;
    let mut comps = 0u32;
    for root in 0..nodes as u32 {
        if index[root as usize] != UNSEEN {
            continue;
        }
        calls.push((root, 0));
        index[root as usize] = counter;
        low[root as usize] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root as usize] = true;
        while let Some(&mut (v, ref mut k)) = calls.last_mut() {
            if *k < degree {
                let w = next(v, *k);
                *k += 1;
                if index[w as usize] == UNSEEN {
                    index[w as usize] = counter;
                    low[w as usize] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w as usize] = true;
                    calls.push((w, 0));
                } else if on_stack[w as usize] {
                    low[v as usize] = low[v as usize].min(index[w as usize]);
                }
                continue;
            }
            calls.pop();
            if let Some(&(parent, _)) = calls.last() {
                low[parent as usize] = low[parent as usize].min(low[v as usize]);
            }
            if low[v as usize] == index[v as usize] {
                loop {
                    let w = stack.pop().expect("on stack");
                    on_stack[w as usize] = false;
                    comp[w as usize] = comps;
                    if w == v {
                        break;
                    }
                }
                comps += 1;
            }
        }
    }
    // renumber by least node
    let mut renumber = vec![UNSEEN; comps as usize];
    let mut next_id = 0;
    for c in comp.iter_mut() {
        if renumber[*c as usize] == UNSEEN {
            renumber[*c as usize] = next_id;
            next_id += 1;
        }
        *c = renumber[*c as usize];
    }
    comp
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_graphs() {
        // 0 -> 1 -> 2 -> 0, 3 -> 0, 4 -> 4
        let succ = [1u32, 2, 0, 0, 4];
        assert_eq!(
            strongly_connected_components(5, 1, |v, _| succ[v as usize]),
            vec![0, 0, 0, 1, 2]
        );
        let succ2 = [[1u32, 1], [0, 2], [2, 2]];
        assert_eq!(
            strongly_connected_components(3, 2, |v, k| succ2[v as usize][k]),
            vec![0, 0, 1]
        );
    }
}
