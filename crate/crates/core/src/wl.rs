//! k-dimensional Weisfeiler-Leman refinement with canonical colour ids.
//!
//! Every round ranks the distinct signatures lexicographically and numbers
//! them `0, 1, 2, ...` in that order. Ids therefore depend only on the
//! isomorphism type of the input, which is what canonisation's argmin
//! relies on. Runs over several graphs share one ranking per round, so ids
//! are comparable across the graphs without ever forming mixed tuples.

use std::cmp::Ordering;

use crate::graph::{Colour, Graph, Vertex};
use crate::GuardError;

/// Largest number of k-tuples a single refinement may colour.
pub const MAX_TUPLES: usize = 1 << 22;

/// Stable (or intermediate) colouring of `V^k`.
///
/// Tuple `(v_1, ..., v_k)` is stored at index `sum v_i * n^(k-i)`, i.e. in
/// lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TupleColouring {
    n: usize,
    k: usize,
    colours: Vec<u32>,
    classes: usize,
    rounds: usize,
}

impl TupleColouring {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.k
    }

    /// Refinement rounds performed before the partition stopped splitting.
    pub fn rounds(&self) -> usize {
        self.rounds
    }

    /// Number of distinct colours occurring in this colouring.
    pub fn class_count(&self) -> usize {
        let mut seen: Vec<u32> = self.colours.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    /// Size of the shared id space this colouring was numbered in. Equals
    /// `class_count` for single-graph runs.
    pub fn id_space(&self) -> usize {
        self.classes
    }

    pub fn tuple_index(&self, tuple: &[Vertex]) -> usize {
        assert_eq!(tuple.len(), self.k, "tuple length must equal the dimension");
        tuple.iter().fold(0, |acc, &v| {
            assert!(v < self.n, "vertex {v} out of range");
            acc * self.n + v
        })
    }

    pub fn colour_of(&self, tuple: &[Vertex]) -> u32 {
        self.colours[self.tuple_index(tuple)]
    }

    /// Colour of `(v, v, ..., v)`.
    pub fn diagonal(&self, v: Vertex) -> u32 {
        let idx = (0..self.k).fold(0, |acc, _| acc * self.n + v);
        self.colours[idx]
    }

    /// Colours of all tuples in lexicographic tuple order.
    pub fn as_slice(&self) -> &[u32] {
        &self.colours
    }
}

/// Stable 1-dimensional colouring of the vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexColouring {
    colours: Vec<u32>,
    classes: usize,
}

impl VertexColouring {
    pub fn from_ids(colours: Vec<u32>) -> Self {
        let classes = colours.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
        VertexColouring { colours, classes }
    }

    #[inline]
    pub fn colour(&self, v: Vertex) -> u32 {
        self.colours[v]
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.colours
    }

    /// One more than the largest id in use.
    pub fn id_bound(&self) -> usize {
        self.classes
    }

    /// The colour classes as vertex lists, ordered by least member.
    pub fn partition(&self) -> Vec<Vec<Vertex>> {
        partition_of(&self.colours)
    }
}

impl From<TupleColouring> for VertexColouring {
    fn from(c: TupleColouring) -> Self {
        assert_eq!(c.k, 1, "only 1-dimensional colourings are vertex colourings");
        VertexColouring {
            colours: c.colours,
            classes: c.classes,
        }
    }
}

/// Classes of equal value, ordered by least index.
pub(crate) fn partition_of(values: &[u32]) -> Vec<Vec<usize>> {
    let mut first_seen: Vec<(u32, usize)> = Vec::new();
    let mut parts: Vec<Vec<usize>> = Vec::new();
    for (i, &c) in values.iter().enumerate() {
        match first_seen.iter().find(|(col, _)| *col == c) {
            Some(&(_, p)) => parts[p].push(i),
            None => {
                first_seen.push((c, parts.len()));
                parts.push(vec![i]);
            }
        }
    }
    parts
}

/// Dense order-preserving ids for a list of keys: equal keys share an id,
/// and ids increase with the lexicographic order of keys.
fn rank_keys<K: Ord>(keys: &[K]) -> (Vec<u32>, usize) {
    let mut order: Vec<u32> = (0..keys.len() as u32).collect();
    order.sort_unstable_by(|&a, &b| keys[a as usize].cmp(&keys[b as usize]));
    let mut ids = vec![0u32; keys.len()];
    let mut next = 0u32;
    for (pos, &i) in order.iter().enumerate() {
        if pos > 0 && keys[order[pos - 1] as usize].cmp(&keys[i as usize]) != Ordering::Equal {
            next += 1;
        }
        ids[i as usize] = next;
    }
    let count = if keys.is_empty() { 0 } else { next as usize + 1 };
    (ids, count)
}

/// Same as `rank_keys` for fixed-width keys stored back to back.
fn rank_flat<T: Ord>(flat: &[T], width: usize) -> (Vec<u32>, usize) {
    let key = |i: u32| &flat[i as usize * width..(i as usize + 1) * width];
    let count = flat.len().checked_div(width).unwrap_or(0);
    let mut order: Vec<u32> = (0..count as u32).collect();
    order.sort_unstable_by(|&a, &b| key(a).cmp(key(b)));
    let mut ids = vec![0u32; count];
    let mut next = 0u32;
    for (pos, &i) in order.iter().enumerate() {
        if pos > 0 && key(order[pos - 1]) != key(i) {
            next += 1;
        }
        ids[i as usize] = next;
    }
    (ids, if count == 0 { 0 } else { next as usize + 1 })
}

fn check_guard(n: usize, k: usize) -> Result<usize, GuardError> {
    let tuples = (0..k).try_fold(1usize, |acc, _| acc.checked_mul(n));
    match tuples {
        Some(t) if t <= MAX_TUPLES => Ok(t),
        _ => Err(GuardError::new(
            "WL tuple count n^k",
            MAX_TUPLES,
            tuples.unwrap_or(usize::MAX),
        )),
    }
}

/// Initial colouring of `V^k` for `k >= 2`: colour sequence, equality
/// pattern and adjacency pattern.
pub fn initial_colouring_k(g: &Graph, k: usize) -> Result<TupleColouring, GuardError> {
    assert!(k >= 2, "initial_colouring_k needs k >= 2");
    let mut out = initial_joint(&[g], k)?;
    Ok(out.pop().expect("one graph in, one colouring out"))
}

fn atomic_key(g: &Graph, tuple: &[Vertex]) -> Vec<u32> {
    let k = tuple.len();
    let mut key: Vec<u32> = tuple.iter().map(|&v| g.colour(v)).collect();
    for i in 0..k {
        for j in i + 1..k {
            key.push(u32::from(tuple[i] == tuple[j]));
        }
    }
    for i in 0..k {
        for j in i + 1..k {
            key.push(u32::from(g.is_adjacent(tuple[i], tuple[j])));
        }
    }
    key
}

fn decode(mut idx: usize, n: usize, k: usize, out: &mut [Vertex]) {
    for slot in out[..k].iter_mut().rev() {
        *slot = idx % n;
        idx /= n;
    }
}

fn initial_joint(graphs: &[&Graph], k: usize) -> Result<Vec<TupleColouring>, GuardError> {
    let mut keys: Vec<Vec<u32>> = Vec::new();
    let mut sizes = Vec::with_capacity(graphs.len());
    for g in graphs {
        let n = g.n();
        let total = check_guard(n, k)?;
        sizes.push(total);
        let mut tuple = vec![0; k];
        for idx in 0..total {
            decode(idx, n, k, &mut tuple);
            if k == 1 {
                keys.push(vec![g.colour(tuple[0])]);
            } else {
                keys.push(atomic_key(g, &tuple));
            }
        }
    }
    let (ids, classes) = rank_keys(&keys);
    let mut out = Vec::with_capacity(graphs.len());
    let mut offset = 0;
    for (g, &size) in graphs.iter().zip(&sizes) {
        out.push(TupleColouring {
            n: g.n(),
            k,
            colours: ids[offset..offset + size].to_vec(),
            classes,
            rounds: 0,
        });
        offset += size;
    }
    Ok(out)
}

/// One refinement step over all graphs jointly. Returns the new colourings
/// and the size of the shared id space.
fn refine_step(graphs: &[&Graph], current: &[TupleColouring], k: usize) -> (Vec<Vec<u32>>, usize) {
    if k == 1 {
        // neighbours only
        let mut keys: Vec<Vec<u32>> = Vec::new();
        for (g, col) in graphs.iter().zip(current) {
            for v in 0..g.n() {
                let mut sig = vec![col.colours[v]];
                let mut nb: Vec<u32> = g.neighbours(v).map(|w| col.colours[w]).collect();
                nb.sort_unstable();
                sig.extend(nb);
                keys.push(sig);
            }
        }
        let (ids, classes) = rank_keys(&keys);
        let mut out = Vec::new();
        let mut offset = 0;
        for g in graphs {
            out.push(ids[offset..offset + g.n()].to_vec());
            offset += g.n();
        }
        return (out, classes);
    }

    // Inner keys: for each tuple t and vertex w, the k colours of
    // t[w/1], ..., t[w/k]. Packed into one order-preserving u64 when the id
    // space allows, ranked jointly otherwise.
    let classes = current.first().map_or(0, |c| c.classes) as u64;
    // packed keys stay below the padding sentinels near u64::MAX
    let packable = (0..k)
        .try_fold(1u64, |acc, _| acc.checked_mul(classes.max(1)))
        .is_some_and(|space| space < 1 << 62);
    let mut inner: Vec<u64> = Vec::new();
    for (g, col) in graphs.iter().zip(current) {
        let n = g.n();
        let total = col.colours.len();
        let pow: Vec<usize> = (0..k).map(|i| n.pow((k - 1 - i) as u32)).collect();
        let mut tuple = vec![0; k];
        for idx in 0..total {
            decode(idx, n, k, &mut tuple);
            for w in 0..n {
                let mut packed = 0u64;
                for i in 0..k {
                    let sub = idx - tuple[i] * pow[i] + w * pow[i];
                    let c = u64::from(col.colours[sub]);
                    if packable {
                        packed = packed * classes + c;
                    } else {
                        inner.push(c);
                    }
                }
                if packable {
                    inner.push(packed);
                }
            }
        }
    }
    let inner_ids: Vec<u64> = if packable {
        inner
    } else {
        rank_flat(&inner, k).0.into_iter().map(u64::from).collect()
    };

    // Signatures: previous colour followed by the sorted inner ids.
    let mut sigs: Vec<u64> = Vec::new();
    let mut cursor = 0;
    let mut max_n = 0;
    for g in graphs {
        max_n = max_n.max(g.n());
    }
    // Graphs of different order yield signatures of different width; pad
    // with a sentinel above every id so widths agree and shorter multisets
    // never collide with longer ones.
    let width = max_n + 2;
    for (g, col) in graphs.iter().zip(current) {
        let n = g.n();
        for idx in 0..col.colours.len() {
            sigs.push(u64::from(col.colours[idx]));
            let start = sigs.len();
            sigs.extend_from_slice(&inner_ids[cursor..cursor + n]);
            sigs[start..].sort_unstable();
            sigs.push(u64::MAX - n as u64);
            for _ in n..max_n {
                sigs.push(u64::MAX);
            }
            cursor += n;
        }
    }
    let (ids, classes) = rank_flat(&sigs, width);
    let mut out = Vec::new();
    let mut offset = 0;
    for col in current {
        let len = col.colours.len();
        out.push(ids[offset..offset + len].to_vec());
        offset += len;
    }
    (out, classes)
}

fn histogram(colours: &[u32]) -> Vec<(u32, usize)> {
    let mut sorted = colours.to_vec();
    sorted.sort_unstable();
    let mut hist: Vec<(u32, usize)> = Vec::new();
    for c in sorted {
        match hist.last_mut() {
            Some((last, count)) if *last == c => *count += 1,
            _ => hist.push((c, 1)),
        }
    }
    hist
}

/// Refines all graphs in lockstep until the joint partition stops
/// splitting. With `stop_on_mismatch`, returns early as soon as two graphs'
/// histograms differ (they can then never agree again).
fn refine_joint(
    graphs: &[&Graph],
    k: usize,
    stop_on_mismatch: bool,
) -> Result<(Vec<TupleColouring>, bool), GuardError> {
    let mut current = initial_joint(graphs, k)?;
    let mut classes = current.first().map_or(0, |c| c.classes);
    let bound = current.iter().map(|c| c.colours.len()).sum::<usize>();
    let mut round = 0;
    loop {
        if stop_on_mismatch && histograms_differ(&current) {
            return Ok((current, true));
        }
        let (next, next_classes) = refine_step(graphs, &current, k);
        round += 1;
        debug_assert!(next_classes >= classes, "refinement never merges classes");
        if next_classes == classes || round > bound {
            for c in &mut current {
                c.rounds = round - 1;
            }
            return Ok((current, false));
        }
        classes = next_classes;
        for (c, colours) in current.iter_mut().zip(next) {
            c.colours = colours;
            c.classes = classes;
        }
    }
}

fn histograms_differ(cols: &[TupleColouring]) -> bool {
    let mut hists = cols.iter().map(|c| histogram(&c.colours));
    match hists.next() {
        Some(first) => hists.any(|h| h != first),
        None => false,
    }
}

/// Stable k-WL colouring. `k = 1` is colour refinement over neighbour
/// multisets.
pub fn wl_stable_k(g: &Graph, k: usize) -> Result<TupleColouring, GuardError> {
    assert!(k >= 1, "WL dimension must be at least 1");
    let (mut out, _) = refine_joint(&[g], k, false)?;
    Ok(out.pop().expect("one colouring"))
}

/// Every k-WL colouring from the initial one up to the stable one.
pub fn wl_history(g: &Graph, k: usize) -> Result<Vec<TupleColouring>, GuardError> {
    assert!(k >= 1, "WL dimension must be at least 1");
    let mut current = initial_joint(&[g], k)?;
    let mut history = vec![current[0].clone()];
    loop {
        let (mut next, classes) = refine_step(&[g], &current, k);
        if classes == current[0].classes {
            return Ok(history);
        }
        let c = &mut current[0];
        c.colours = next.pop().expect("one colouring");
        c.classes = classes;
        c.rounds += 1;
        history.push(c.clone());
    }
}

/// Stable colour refinement of the vertices.
pub fn colour_refinement(g: &Graph) -> VertexColouring {
    wl_stable_k(g, 1)
        .expect("n^1 tuples are always within the guard")
        .into()
}

/// Stable colourings of several graphs computed in one shared id space.
pub fn wl_stable_joint(graphs: &[&Graph], k: usize) -> Result<Vec<TupleColouring>, GuardError> {
    assert!(k >= 1);
    refine_joint(graphs, k, false).map(|(c, _)| c)
}

/// Recolours so that `tuple[i]` gets colour `i + 1` (the last occurrence
/// wins) and every other vertex gets its old colour shifted past the pebble
/// colours, to `c + tuple.len() + 1`. Colours start at 0, so the extra 1
/// keeps colour 0 vertices clear of the last pebble.
pub fn individualise(g: &Graph, tuple: &[Vertex]) -> Graph {
    let l = tuple.len() as Colour;
    let mut colours: Vec<Colour> = g.colours().iter().map(|&c| c + l + 1).collect();
    for (i, &v) in tuple.iter().enumerate() {
        colours[v] = i as Colour + 1;
    }
    g.clone().with_colours(colours).expect("same vertex count")
}

/// Whether k-WL tells `g` and `h` apart.
pub fn wl_distinguishes(g: &Graph, h: &Graph, k: usize) -> Result<bool, GuardError> {
    assert!(k >= 1);
    if g.n() != h.n() {
        return Ok(true);
    }
    if g == h {
        return Ok(false);
    }
    let (cols, mismatch) = refine_joint(&[g, h], k, true)?;
    Ok(mismatch || histograms_differ(&cols))
}

/// `(colour id, multiplicity)` pairs sorted by id.
pub fn colour_histogram(c: &TupleColouring) -> Vec<(u32, usize)> {
    histogram(&c.colours)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{complete, cycle, path};

    fn two_triangles() -> Graph {
        cycle(3).disjoint_union(&cycle(3))
    }

    #[test]
    fn initial_k2_examples() {
        let e2 = Graph::new(2);
        assert_eq!(initial_colouring_k(&e2, 2).unwrap().class_count(), 2);
        assert_eq!(initial_colouring_k(&complete(2), 2).unwrap().class_count(), 2);
        // diagonal, adjacent pairs, non-adjacent distinct pairs
        let c = initial_colouring_k(&path(3), 2).unwrap();
        assert_eq!(c.class_count(), 3);
        assert_eq!(c.colour_of(&[0, 1]), c.colour_of(&[2, 1]));
        assert_eq!(c.colour_of(&[0, 2]), c.colour_of(&[2, 0]));
        assert_ne!(c.colour_of(&[0, 1]), c.colour_of(&[0, 2]));
        assert_eq!(c.colour_of(&[1, 1]), c.colour_of(&[0, 0]));
    }

    #[test]
    fn initial_respects_colours_and_order() {
        let g = path(3).with_colours(vec![0, 1, 0]).unwrap();
        let c = initial_colouring_k(&g, 2).unwrap();
        assert_ne!(c.colour_of(&[0, 1]), c.colour_of(&[1, 0]));
        assert_ne!(c.colour_of(&[0, 0]), c.colour_of(&[1, 1]));
    }

    #[test]
    fn refinement_on_vertex_transitive_graphs() {
        for g in [cycle(5), complete(4), cycle(6)] {
            assert_eq!(wl_stable_k(&g, 1).unwrap().class_count(), 1);
        }
    }

    #[test]
    fn path_has_ends_and_middle() {
        let c = wl_stable_k(&path(3), 1).unwrap();
        assert_eq!(c.class_count(), 2);
        assert_eq!(c.colour_of(&[0]), c.colour_of(&[2]));
        assert_ne!(c.colour_of(&[0]), c.colour_of(&[1]));
        // ends: (0, [deg-class]) ; ids are ranked so the end signature
        // (prev 0, one neighbour) sorts before the middle (prev 0, two)
        assert_eq!(colour_histogram(&c), vec![(0, 2), (1, 1)]);
        let vc = colour_refinement(&path(3));
        assert_eq!(vc.partition(), vec![vec![0, 2], vec![1]]);
    }

    #[test]
    fn hexagon_versus_triangles() {
        let c6 = cycle(6);
        let t = two_triangles();
        assert!(!wl_distinguishes(&c6, &t, 1).unwrap());
        assert!(wl_distinguishes(&c6, &t, 2).unwrap());
        let joint = wl_stable_joint(&[&c6, &t], 1).unwrap();
        assert_eq!(colour_histogram(&joint[0]), colour_histogram(&joint[1]));
    }

    #[test]
    fn distinguishes_examples() {
        let p = path(3);
        assert!(!wl_distinguishes(&p, &p, 1).unwrap());
        assert!(!wl_distinguishes(&p, &p, 3).unwrap());
        assert!(wl_distinguishes(&p, &complete(3), 1).unwrap());
        assert!(wl_distinguishes(&p, &complete(4), 1).unwrap());
    }

    #[test]
    fn individualise_formula() {
        let g = path(3).with_colours(vec![0, 1, 2]).unwrap();
        assert_eq!(individualise(&g, &[]).colours(), &[1, 2, 3]);
        // the later of two equal entries names the colour
        let h = individualise(&g, &[1, 1]);
        assert_eq!(h.colours(), &[3, 2, 5]);
        let h = individualise(&g, &[2, 0]);
        assert_eq!(h.colours(), &[2, 4, 1]);
        let plain = individualise(&path(3), &[0]);
        assert_eq!(plain.colours(), &[1, 2, 2]);
    }

    #[test]
    fn individualising_a_triangle_vertex_splits_it() {
        let g = individualise(&complete(3), &[0]);
        let c = wl_stable_k(&g, 1).unwrap();
        assert_eq!(c.class_count(), 2);
    }

    #[test]
    fn histogram_sums() {
        let c = wl_stable_k(&Graph::new(4), 1).unwrap();
        assert_eq!(colour_histogram(&c), vec![(0, 4)]);
        let c = wl_stable_k(&complete(2), 2).unwrap();
        let h = colour_histogram(&c);
        assert_eq!(h.len(), 2);
        assert_eq!(h.iter().map(|x| x.1).sum::<usize>(), 4);
    }

    #[test]
    fn guard_is_enforced() {
        assert!(wl_stable_k(&Graph::new(100), 4).is_err());
    }

    #[test]
    fn rank_keys_is_order_preserving() {
        let keys = vec![vec![3], vec![1, 2], vec![1], vec![3]];
        let (ids, count) = rank_keys(&keys);
        assert_eq!(ids, vec![2, 1, 0, 2]);
        assert_eq!(count, 3);
        let (ids, count) = rank_flat(&[5, 1, 0, 9, 5, 1], 2);
        assert_eq!(ids, vec![1, 0, 1]);
        assert_eq!(count, 2);
    }
}
