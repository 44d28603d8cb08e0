//! Enumeration of stable graphs.
//!
//! A stable graph of genus g with n (labeled) legs is a connected multigraph
//! with genus-labeled vertices such that sum g_v + b_1 = g (b_1 the first
//! Betti number) and every vertex satisfies 2 g_v - 2 + val_v > 0, where
//! val_v counts edge ends (loops twice) plus legs. Legs are pointwise fixed
//! by isomorphisms.
//!
//! Enumeration generates labeled structures recursively (sorted genus
//! vectors, all leg placements, edge multisets with valence and
//! connectivity pruning), canonicalizes by minimal encoding over admissible
//! vertex permutations, and deduplicates. Results are cached per (g, n);
//! the scale of interest is g <= 3, n <= 4.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Mutex;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// One isomorphism class of stable graphs, in canonical labeling.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StableGraph {
    /// Genus of each vertex.
    pub genera: Vec<u32>,
    /// Vertex carrying each leg (legs are labeled 0..n-1).
    pub legs: Vec<usize>,
    /// Edge multiset: multiplicity of each unordered pair i <= j
    /// (i == j is a self-loop).
    pub edges: BTreeMap<(usize, usize), u32>,
    /// Order of the automorphism group (legs fixed pointwise).
    pub aut_order: u64,
}

impl StableGraph {
    pub fn num_vertices(&self) -> usize {
        self.genera.len()
    }

    pub fn num_edges(&self) -> u32 {
        self.edges.values().sum()
    }

    /// Edge ends at vertex v (loops count twice).
    pub fn edge_degree(&self, v: usize) -> u32 {
        let mut d = 0;
        for (&(i, j), &m) in &self.edges {
            if i == v {
                d += m;
            }
            if j == v {
                d += m;
            }
        }
        d
    }

    /// Total valence of v: edge ends plus legs.
    pub fn valence(&self, v: usize) -> u32 {
        self.edge_degree(v) + self.legs.iter().filter(|&&w| w == v).count() as u32
    }

    /// True when this is the single-vertex, no-edge graph (the leading
    /// term of the Feynman rule).
    pub fn is_leading(&self) -> bool {
        self.genera.len() == 1 && self.edges.is_empty()
    }

    /// One-line text form: genera; edges (loops repeated); legs; |Aut|.
    pub fn encode_line(&self) -> String {
        let genera = self
            .genera
            .iter()
            .map(|g| g.to_string())
            .collect::<Vec<_>>()
            .join(",");
        let mut edge_items = Vec::new();
        for (&(i, j), &m) in &self.edges {
            for _ in 0..m {
                edge_items.push(format!("{i}-{j}"));
            }
        }
        let legs = self
            .legs
            .iter()
            .enumerate()
            .map(|(l, v)| format!("{l}:{v}"))
            .collect::<Vec<_>>()
            .join(",");
        format!(
            "g=[{genera}] e=[{}] l=[{legs}] aut={}",
            edge_items.join(","),
            self.aut_order
        )
    }
}

/// Raw labeled structure during generation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Labeled {
    genera: Vec<u32>,
    legs: Vec<usize>,
    edges: Vec<u32>, // multiplicity per pair index (see pair_index)
}

fn pair_index(nv: usize, i: usize, j: usize) -> usize {
    // Index into the upper triangle (i <= j), row-major.
    debug_assert!(i <= j && j < nv);
    i * nv - i * (i + 1) / 2 + j
}

fn pairs(nv: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..nv {
        for j in i..nv {
            out.push((i, j));
        }
    }
    out
}

fn min_valence(g: u32) -> u32 {
    // 2g - 2 + val > 0.
    match g {
        0 => 3,
        1 => 1,
        _ => 0,
    }
}

/// Isomorphism-invariant vertex key: genus, incident legs, edge degree,
/// loop count, sorted profile of (multiplicity, neighbor genus, neighbor
/// degree) over distinct neighbors. Automorphisms preserve every component,
/// so permutations may be restricted to vertices with equal keys.
type InvKey = (u32, Vec<usize>, u32, u32, Vec<(u32, u32, u32)>);

fn invariant_keys(l: &Labeled) -> Vec<InvKey> {
    let nv = l.genera.len();
    let pair_list = pairs(nv);
    let mut deg = vec![0u32; nv];
    let mut loops = vec![0u32; nv];
    for (idx, &(i, j)) in pair_list.iter().enumerate() {
        let m = l.edges[idx];
        if m == 0 {
            continue;
        }
        if i == j {
            deg[i] += 2 * m;
            loops[i] += m;
        } else {
            deg[i] += m;
            deg[j] += m;
        }
    }
    let mut keys = Vec::with_capacity(nv);
    for v in 0..nv {
        let mut legs: Vec<usize> = l
            .legs
            .iter()
            .enumerate()
            .filter(|(_, &w)| w == v)
            .map(|(i, _)| i)
            .collect();
        legs.sort_unstable();
        let mut profile = Vec::new();
        for w in 0..nv {
            if w == v {
                continue;
            }
            let m = l.edges[pair_index(nv, v.min(w), v.max(w))];
            if m > 0 {
                profile.push((m, l.genera[w], deg[w]));
            }
        }
        profile.sort_unstable();
        keys.push((l.genera[v], legs, deg[v], loops[v], profile));
    }
    keys
}

/// Groups vertices by invariant key, sorted by key; admissible permutations
/// map each group onto itself.
fn invariant_groups(l: &Labeled) -> Vec<Vec<usize>> {
    let keys = invariant_keys(l);
    let nv = keys.len();
    let mut order: Vec<usize> = (0..nv).collect();
    order.sort_by(|&a, &b| keys[a].cmp(&keys[b]).then(a.cmp(&b)));
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match groups.last() {
            Some(last) if keys[last[0]] == keys[v] => groups.last_mut().unwrap().push(v),
            _ => groups.push(vec![v]),
        }
    }
    groups
}

/// Relabels the structure by relabel[v] = new index of old vertex v.
fn apply_perm(l: &Labeled, relabel: &[usize]) -> Labeled {
    let nv = l.genera.len();
    let mut genera = vec![0u32; nv];
    for v in 0..nv {
        genera[relabel[v]] = l.genera[v];
    }
    let legs: Vec<usize> = l.legs.iter().map(|&v| relabel[v]).collect();
    let mut edges = vec![0u32; l.edges.len()];
    for (idx, &(i, j)) in pairs(nv).iter().enumerate() {
        if l.edges[idx] == 0 {
            continue;
        }
        let (a, b) = (relabel[i].min(relabel[j]), relabel[i].max(relabel[j]));
        edges[pair_index(nv, a, b)] += l.edges[idx];
    }
    Labeled { genera, legs, edges }
}

/// Calls f for every relabeling that sends group k onto the slot range
/// [start_k, start_k + |group_k|) in group order.
fn for_each_group_relabel(groups: &[Vec<usize>], nv: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(
        groups: &[Vec<usize>],
        gi: usize,
        start: usize,
        relabel: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]),
    ) {
        if gi == groups.len() {
            f(relabel);
            return;
        }
        let members = &groups[gi];
        let k = members.len();
        let mut used = vec![false; k];
        place(members, start, 0, &mut used, relabel, &mut |relabel| {
            rec(groups, gi + 1, start + k, relabel, f)
        });
    }
    fn place(
        members: &[usize],
        start: usize,
        pos: usize,
        used: &mut Vec<bool>,
        relabel: &mut Vec<usize>,
        done: &mut dyn FnMut(&mut Vec<usize>),
    ) {
        if pos == members.len() {
            done(relabel);
            return;
        }
        for k in 0..members.len() {
            if used[k] {
                continue;
            }
            used[k] = true;
            relabel[members[k]] = start + pos;
            place(members, start, pos + 1, used, relabel, done);
            used[k] = false;
        }
    }
    let mut relabel = vec![0usize; nv];
    rec(groups, 0, 0, &mut relabel, f);
}

/// Lexicographically minimal relabeling over invariant-preserving vertex
/// permutations. Isomorphic structures get equal canonical forms because
/// the group slot layout is determined by the invariant keys alone.
fn canonical(l: &Labeled) -> Labeled {
    let groups = invariant_groups(l);
    let nv = l.genera.len();
    let mut best: Option<Labeled> = None;
    for_each_group_relabel(&groups, nv, &mut |relabel| {
        let cand = apply_perm(l, relabel);
        if best.as_ref().map_or(true, |b| cand < *b) {
            best = Some(cand);
        }
    });
    best.unwrap()
}

/// Number of vertex permutations fixing genera, legs, and the edge
/// multiset. Valid for any labeling: invariant groups are permuted onto
/// slot ranges and the image compared against the canonical form.
fn vertex_symmetries(l: &Labeled) -> u64 {
    let groups = invariant_groups(l);
    let nv = l.genera.len();
    let mut count = 0u64;
    let reference = canonical(l);
    for_each_group_relabel(&groups, nv, &mut |relabel| {
        if apply_perm(l, relabel) == reference {
            count += 1;
        }
    });
    count
}

/// |Aut|: vertex symmetries times the half-edge symmetries fixing all
/// vertices (parallel-edge permutations and loop flips).
fn aut_order(l: &Labeled) -> u64 {
    let nv = l.genera.len();
    let mut kernel = 1u64;
    for (idx, &(i, j)) in pairs(nv).iter().enumerate() {
        let m = l.edges[idx] as u64;
        if m == 0 {
            continue;
        }
        let mut f = 1u64;
        for k in 2..=m {
            f *= k;
        }
        kernel *= f;
        if i == j {
            kernel *= 1u64 << m; // each loop flips independently
        }
    }
    kernel * vertex_symmetries(l)
}

/// All isomorphism classes of stable graphs of genus g with n labeled legs,
/// sorted by (vertex count, edge count, encoding). Cached per (g, n).
pub fn enumerate(g: u32, n: u32) -> Result<Vec<StableGraph>> {
    if 2 * g as i64 - 2 + n as i64 <= 0 {
        return Err(Error::Unstable { g, n });
    }
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), Vec<StableGraph>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&(g, n)) {
        return Ok(hit.clone());
    }
    let out = enumerate_uncached(g, n);
    cache.lock().unwrap().insert((g, n), out.clone());
    Ok(out)
}

fn enumerate_uncached(g: u32, n: u32) -> Vec<StableGraph> {
    let mut seen: HashSet<Labeled> = HashSet::new();
    let mut out: Vec<StableGraph> = Vec::new();
    let max_v = (2 * g + n).saturating_sub(2).max(1) as usize;

    for nv in 1..=max_v {
        for b1 in 0..=g {
            let genus_sum = g - b1;
            let ne = nv as u32 + b1 - 1; // |E| = |V| - 1 + b1
            for genera in sorted_genus_vectors(genus_sum, nv) {
                // Total end count cannot satisfy the valence bounds.
                let need: u32 = genera.iter().map(|&gv| min_valence(gv)).sum();
                if need > 2 * ne + n {
                    continue;
                }
                for legs in leg_assignments(nv, n as usize) {
                    enumerate_edges(&genera, &legs, ne, &mut |edges| {
                        let l = Labeled {
                            genera: genera.clone(),
                            legs: legs.clone(),
                            edges: edges.to_vec(),
                        };
                        let c = canonical(&l);
                        if seen.insert(c.clone()) {
                            let aut = aut_order(&c);
                            let nv = c.genera.len();
                            let mut edges = BTreeMap::new();
                            for (idx, &(i, j)) in pairs(nv).iter().enumerate() {
                                if c.edges[idx] > 0 {
                                    edges.insert((i, j), c.edges[idx]);
                                }
                            }
                            out.push(StableGraph {
                                genera: c.genera,
                                legs: c.legs,
                                edges,
                                aut_order: aut,
                            });
                        }
                    });
                }
            }
        }
    }
    out.sort_by(|a, b| {
        (a.num_vertices(), a.num_edges(), a.encode_line())
            .cmp(&(b.num_vertices(), b.num_edges(), b.encode_line()))
    });
    out
}

/// Non-increasing genus vectors of the given sum and length.
fn sorted_genus_vectors(sum: u32, len: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn rec(remaining: u32, slots: usize, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 0 {
            if remaining == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let hi = remaining.min(cap);
        for gv in (0..=hi).rev() {
            cur.push(gv);
            rec(remaining - gv, slots - 1, gv, cur, out);
            cur.pop();
        }
    }
    rec(sum, len, sum, &mut cur, &mut out);
    out
}

fn leg_assignments(nv: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for partial in &out {
            for v in 0..nv {
                let mut p = partial.clone();
                p.push(v);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// Recursively assigns edge multiplicities to vertex pairs in row-major
/// order. Prunes on the valence deficit (each edge supplies two ends) and,
/// whenever a vertex closes (its last incident pair is decided), on
/// components that can no longer reach an open vertex.
fn enumerate_edges(genera: &[u32], legs: &[usize], ne: u32, f: &mut dyn FnMut(&[u32])) {
    let nv = genera.len();
    let pair_list = pairs(nv);
    let leg_count: Vec<u32> = (0..nv)
        .map(|v| legs.iter().filter(|&&w| w == v).count() as u32)
        .collect();
    let min_val: Vec<u32> = genera.iter().map(|&gv| min_valence(gv)).collect();

    struct Ctx<'a> {
        nv: usize,
        pair_list: &'a [(usize, usize)],
        leg_count: &'a [u32],
        min_val: &'a [u32],
        ne: u32,
    }

    fn deficit(ctx: &Ctx, deg: &[u32]) -> u32 {
        let mut need = 0;
        for v in 0..ctx.nv {
            let have = deg[v] + ctx.leg_count[v];
            if have < ctx.min_val[v] {
                need += ctx.min_val[v] - have;
            }
        }
        need
    }

    /// True when some component of the placed edges consists entirely of
    /// closed vertices (index <= closed_up_to) without spanning everything.
    fn dead_component(ctx: &Ctx, edges: &[u32], closed_up_to: usize) -> bool {
        let nv = ctx.nv;
        let mut parent: Vec<usize> = (0..nv).collect();
        fn find(parent: &mut Vec<usize>, mut v: usize) -> usize {
            while parent[v] != v {
                parent[v] = parent[parent[v]];
                v = parent[v];
            }
            v
        }
        for (idx, &(i, j)) in ctx.pair_list.iter().enumerate() {
            if edges[idx] > 0 && i != j {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        let mut max_member = vec![0usize; nv];
        let mut size = vec![0usize; nv];
        for v in 0..nv {
            let r = find(&mut parent, v);
            max_member[r] = max_member[r].max(v);
            size[r] += 1;
        }
        (0..nv).any(|v| parent[v] == v && max_member[v] <= closed_up_to && size[v] < nv)
    }

    fn rec(
        ctx: &Ctx,
        edges: &mut Vec<u32>,
        idx: usize,
        used: u32,
        deg: &mut Vec<u32>,
        f: &mut dyn FnMut(&[u32]),
    ) {
        let rem = ctx.ne - used;
        if deficit(ctx, deg) > 2 * rem {
            return;
        }
        if idx == ctx.pair_list.len() {
            if rem == 0 && !dead_component(ctx, edges, ctx.nv - 1) {
                f(edges);
            }
            return;
        }
        // Vertex i closes after its row; components made only of closed
        // vertices can never connect to the rest, since all undecided
        // pairs lie strictly among open vertices.
        if idx > 0 {
            let (pi, pj) = ctx.pair_list[idx - 1];
            if pj == ctx.nv - 1 {
                if deg[pi] + ctx.leg_count[pi] < ctx.min_val[pi] {
                    return;
                }
                if ctx.nv > 1 && dead_component(ctx, edges, pi) {
                    return;
                }
            }
        }
        let (i, j) = ctx.pair_list[idx];
        for m in 0..=rem {
            edges[idx] = m;
            if i == j {
                deg[i] += 2 * m;
            } else {
                deg[i] += m;
                deg[j] += m;
            }
            rec(ctx, edges, idx + 1, used + m, deg, f);
            if i == j {
                deg[i] -= 2 * m;
            } else {
                deg[i] -= m;
                deg[j] -= m;
            }
            edges[idx] = 0;
        }
    }

    let ctx = Ctx { nv, pair_list: &pair_list, leg_count: &leg_count, min_val: &min_val, ne };
    let mut edges = vec![0u32; pair_list.len()];
    let mut deg = vec![0u32; nv];
    rec(&ctx, &mut edges, 0, 0, &mut deg, f);
}

/// Generates every vertex-labeled stable structure (no dedup). Used by
/// [`labeled_census_check`] to validate |Aut| via orbit counting.
fn enumerate_labeled(g: u32, n: u32) -> Vec<Labeled> {
    let mut out = Vec::new();
    let max_v = (2 * g + n).saturating_sub(2).max(1) as usize;
    for nv in 1..=max_v {
        for b1 in 0..=g {
            let genus_sum = g - b1;
            let ne = nv as u32 + b1 - 1;
            for genera in all_genus_vectors(genus_sum, nv) {
                for legs in leg_assignments(nv, n as usize) {
                    enumerate_edges(&genera, &legs, ne, &mut |edges| {
                        out.push(Labeled {
                            genera: genera.clone(),
                            legs: legs.clone(),
                            edges: edges.to_vec(),
                        });
                    });
                }
            }
        }
    }
    out
}

fn all_genus_vectors(sum: u32, len: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for slot in 0..len {
        let mut next = Vec::new();
        for partial in &out {
            let used: u32 = partial.iter().sum();
            for gv in 0..=(sum - used) {
                if slot + 1 == len && gv != sum - used {
                    continue;
                }
                let mut p = partial.clone();
                p.push(gv);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// Brute-force cross-check of the canonical enumeration. Regenerates every
/// vertex-labeled structure, groups orbits under canonicalization, and
/// verifies that the class list matches [`enumerate`] and that each orbit
/// satisfies the orbit-stabilizer identity
/// (labeled count) * (vertex symmetries) = V!.
///
/// Returns the number of isomorphism classes. Feasible for g <= 3, small n.
pub fn labeled_census_check(g: u32, n: u32) -> Result<usize> {
    let mut orbit: HashMap<Labeled, u64> = HashMap::new();
    for l in enumerate_labeled(g, n) {
        *orbit.entry(canonical(&l)).or_insert(0) += 1;
    }
    let classes = enumerate(g, n)?;
    if classes.len() != orbit.len() {
        return Err(Error::InvalidInput(format!(
            "labeled census found {} classes at (g,n)=({g},{n}); enumerate gives {}",
            orbit.len(),
            classes.len()
        )));
    }
    for (c, count) in &orbit {
        let nv = c.genera.len();
        let vfact: u64 = (1..=nv as u64).product();
        if count * vertex_symmetries(c) != vfact {
            return Err(Error::InvalidInput(format!(
                "orbit-stabilizer identity failed at (g,n)=({g},{n}) for {c:?}"
            )));
        }
    }
    Ok(classes.len())
}
