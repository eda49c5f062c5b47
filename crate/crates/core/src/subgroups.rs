//! Finite-level subgroup machinery: level actions, orbit tables, Schreier
//! generators for level and vertex stabilizers, projections, rigid
//! stabilizer witnesses, orbit chains and the commutator construction.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::decide::{canonical_key, equals, is_trivial, is_trivial_word, portrait, PortraitNode};
use crate::element::{Element, Letter, Vertex, Word};
use crate::error::{Error, Result};
use crate::group::{GroupDef, StateSpec, IDENTITY};
use crate::perm::Perm;

/// Orbit computations stop here unless the caller asks for more.
pub const DEFAULT_MAX_DEPTH: usize = 12;

/// Cap on transversal sizes in Schreier constructions.
pub const DEFAULT_ORBIT_CAP: usize = 1 << 16;

/// A nonempty list of named elements of one group.
#[derive(Clone, Debug, Serialize)]
pub struct GenSet {
    names: Vec<String>,
    elements: Vec<Element>,
}

impl GenSet {
    pub fn new(named: Vec<(String, Element)>) -> Result<Self> {
        let Some((_, first)) = named.first() else {
            return Err(Error::EmptyGenSet);
        };
        if named.iter().any(|(_, e)| !e.same_group(first)) {
            return Err(Error::MixedGroups);
        }
        let (names, elements) = named.into_iter().unzip();
        Ok(GenSet { names, elements })
    }

    /// Unnamed elements; names are their words.
    pub fn from_elements(elements: Vec<Element>) -> Result<Self> {
        GenSet::new(elements.into_iter().map(|e| (e.to_string(), e)).collect())
    }

    /// All states of the presentation.
    pub fn generators(group: &Arc<GroupDef>) -> Self {
        let named = group
            .states()
            .iter()
            .enumerate()
            .map(|(i, s)| (s.name.clone(), Element::generator(group, i)))
            .collect();
        GenSet::new(named).expect("a GroupDef has at least one state")
    }

    pub fn parse(group: &Arc<GroupDef>, words: &[&str]) -> Result<Self> {
        let named = words
            .iter()
            .map(|w| Ok((w.trim().to_string(), crate::word::parse_word(w, group)?)))
            .collect::<Result<Vec<_>>>()?;
        GenSet::new(named)
    }

    pub fn group(&self) -> &Arc<GroupDef> {
        self.elements[0].group()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Permutations induced by the states on one level, computed directly from
/// the recursion `s(x_i w) = x_{ν(i)} s_{ν(i)}(w)`.
pub struct LevelAction {
    degree: usize,
    level: usize,
    forward: Vec<Vec<u32>>,
    backward: Vec<Vec<u32>>,
}

impl LevelAction {
    pub fn new(group: &GroupDef, level: usize) -> Self {
        let d = group.degree();
        let n_states = group.states().len();
        let mut forward: Vec<Vec<u32>> = vec![vec![0]; n_states];
        let mut width = 1usize;
        for _ in 0..level {
            let next: Vec<Vec<u32>> = (0..n_states)
                .map(|s| {
                    let st = group.state(s);
                    let mut img = vec![0u32; width * d];
                    for i in 0..d {
                        let j = st.perm.apply(i);
                        let below = st.slots[j].map(|t| &forward[t]);
                        for r in 0..width {
                            let r2 = below.map_or(r as u32, |p| p[r]);
                            img[i * width + r] = (j * width) as u32 + r2;
                        }
                    }
                    img
                })
                .collect();
            forward = next;
            width *= d;
        }
        let backward = forward
            .iter()
            .map(|p| {
                let mut inv = vec![0u32; p.len()];
                for (i, &x) in p.iter().enumerate() {
                    inv[x as usize] = i as u32;
                }
                inv
            })
            .collect();
        LevelAction {
            degree: d,
            level,
            forward,
            backward,
        }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn width(&self) -> usize {
        self.degree.pow(self.level as u32)
    }

    pub fn letter(&self, l: Letter) -> &[u32] {
        if l.inverse {
            &self.backward[l.state as usize]
        } else {
            &self.forward[l.state as usize]
        }
    }

    /// `result[v] = g(v)` for every vertex index `v` of the level.
    pub fn word_perm(&self, word: &[Letter]) -> Vec<u32> {
        let mut p: Vec<u32> = (0..self.width() as u32).collect();
        for &l in word.iter().rev() {
            let m = self.letter(l);
            for x in p.iter_mut() {
                *x = m[*x as usize];
            }
        }
        p
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelOrbits {
    pub level: usize,
    /// Orbits sorted by their smallest vertex; members in lexicographic order.
    pub orbits: Vec<Vec<Vertex>>,
    /// `parent[i]` is the index of the level-(n−1) orbit containing the
    /// parents of `orbits[i]` (the map `e`). Empty at level 0.
    pub parent: Vec<usize>,
}

/// Orbit partitions of levels `0..=depth` under a group of tree automorphisms.
#[derive(Clone, Debug, Serialize)]
pub struct OrbitTable {
    pub degree: usize,
    pub levels: Vec<LevelOrbits>,
}

impl OrbitTable {
    pub fn counts(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbits.len()).collect()
    }

    pub fn orbit_of(&self, v: &Vertex) -> Option<usize> {
        self.levels
            .get(v.len())?
            .orbits
            .iter()
            .position(|o| o.binary_search(v).is_ok())
    }

    /// Every orbit's parents lie in a single orbit of the previous level.
    pub fn e_well_defined(&self) -> bool {
        self.levels.windows(2).all(|pair| {
            let (up, down) = (&pair[0], &pair[1]);
            down.orbits.iter().zip(&down.parent).all(|(orbit, &p)| {
                orbit.iter().all(|v| {
                    let parent = v.parent().expect("level ≥ 1");
                    up.orbits[p].binary_search(&parent).is_ok()
                })
            })
        })
    }

    /// Every orbit of a level is hit by `e` from the next level.
    pub fn e_surjective(&self) -> bool {
        self.levels.windows(2).all(|pair| {
            let hit: HashSet<usize> = pair[1].parent.iter().copied().collect();
            hit.len() == pair[0].orbits.len()
        })
    }

    /// Each level is a partition of all `d^n` vertices.
    pub fn is_partition(&self) -> bool {
        self.levels.iter().all(|l| {
            let mut all: Vec<&Vertex> = l.orbits.iter().flatten().collect();
            all.sort();
            all.dedup();
            all.len() == self.degree.pow(l.level as u32)
                && l.orbits.iter().map(Vec::len).sum::<usize>() == all.len()
        })
    }
}

fn find(uf: &mut [u32], mut x: u32) -> u32 {
    while uf[x as usize] != x {
        uf[x as usize] = uf[uf[x as usize] as usize];
        x = uf[x as usize];
    }
    x
}

fn orbit_blocks(action: &LevelAction, words: &[Word]) -> Vec<Vec<usize>> {
    let width = action.width();
    let mut uf: Vec<u32> = (0..width as u32).collect();
    for w in words {
        let p = action.word_perm(w);
        for (v, &img) in p.iter().enumerate() {
            let (a, b) = (find(&mut uf, v as u32), find(&mut uf, img));
            if a != b {
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                uf[hi as usize] = lo;
            }
        }
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut block_of_root: HashMap<u32, usize> = HashMap::new();
    for v in 0..width {
        let r = find(&mut uf, v as u32);
        let k = *block_of_root.entry(r).or_insert_with(|| {
            blocks.push(Vec::new());
            blocks.len() - 1
        });
        blocks[k].push(v);
    }
    blocks
}

fn orbit_table_of_words(group: &GroupDef, words: &[Word], depth: usize) -> OrbitTable {
    let d = group.degree();
    let blocks: Vec<Vec<Vec<usize>>> = (0..=depth)
        .into_par_iter()
        .map(|level| orbit_blocks(&LevelAction::new(group, level), words))
        .collect();
    let mut levels: Vec<LevelOrbits> = Vec::with_capacity(depth + 1);
    for (level, bl) in blocks.iter().enumerate() {
        let parent = if level == 0 {
            Vec::new()
        } else {
            let mut block_of = vec![0usize; d.pow(level as u32 - 1)];
            for (k, b) in blocks[level - 1].iter().enumerate() {
                for &v in b {
                    block_of[v] = k;
                }
            }
            bl.iter().map(|b| block_of[b[0] / d]).collect()
        };
        levels.push(LevelOrbits {
            level,
            orbits: bl
                .iter()
                .map(|b| b.iter().map(|&i| Vertex::from_index(i, level, d)).collect())
                .collect(),
            parent,
        });
    }
    OrbitTable { degree: d, levels }
}

/// Orbits of `⟨S⟩` on levels `0..=depth`.
pub fn orbits(s: &GenSet, depth: usize) -> OrbitTable {
    let words: Vec<Word> = s.elements().iter().map(|e| e.letters().to_vec()).collect();
    orbit_table_of_words(s.group(), &words, depth)
}

/// `⟨S⟩` has a single orbit on every level `1..=depth`.
pub fn is_level_transitive(s: &GenSet, depth: usize) -> bool {
    orbits(s, depth).counts().iter().all(|&c| c == 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "at", rename_all = "snake_case")]
pub enum StabTarget {
    Level(usize),
    Vertex(Vertex),
}

#[derive(Clone, Debug, Serialize)]
pub struct TransversalEntry {
    /// The orbit point reached: a vertex, or a level permutation in cycle notation.
    pub point: String,
    pub element: Element,
}

#[derive(Clone, Debug, Serialize)]
pub struct StabilizerGens {
    pub target: StabTarget,
    pub generators: Vec<Element>,
    pub transversal: Vec<TransversalEntry>,
}

impl StabilizerGens {
    /// Checks that every generator fixes the target pointwise.
    pub fn all_fix_target(&self) -> bool {
        let Some(g0) = self.generators.first() else {
            return true;
        };
        let group = g0.group();
        match &self.target {
            StabTarget::Level(n) => {
                let action = LevelAction::new(group, *n);
                self.generators.iter().all(|g| {
                    action
                        .word_perm(g.letters())
                        .iter()
                        .enumerate()
                        .all(|(i, &x)| i as u32 == x)
                })
            }
            StabTarget::Vertex(v) => self.generators.iter().all(|g| g.act(v).as_ref() == Ok(v)),
        }
    }
}

fn level_perm_label(p: &[u32], level: usize, degree: usize) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] as usize == start {
            continue;
        }
        let mut cyc = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cyc.push(Vertex::from_index(x, level, degree).to_string());
            x = p[x] as usize;
        }
        out.push_str(&format!("({})", cyc.join(" ")));
    }
    if out.is_empty() {
        "id".into()
    } else {
        out
    }
}

/// Transversal `(point, element)` pairs and the Schreier generators.
type SchreierData<P> = (Vec<(P, Element)>, Vec<Element>);

/// Schreier generators `t_{s·x}⁻¹ s t_x` over a breadth-first transversal.
/// Trivial generators are dropped and duplicates merged; `{1}` if nothing is left.
fn schreier<P: Clone + Eq + std::hash::Hash>(
    s: &GenSet,
    base: P,
    step: impl Fn(usize, &P) -> P,
    cap: usize,
) -> Result<SchreierData<P>> {
    let group = s.group();
    let mut index: HashMap<P, usize> = HashMap::new();
    let mut transversal: Vec<(P, Element)> = vec![(base.clone(), Element::identity(group))];
    index.insert(base, 0);
    let mut candidates: Vec<Element> = Vec::new();
    let mut i = 0;
    while i < transversal.len() {
        let (point, t) = transversal[i].clone();
        for (gi, gen) in s.elements().iter().enumerate() {
            let image = step(gi, &point);
            let st = gen.multiply(&t)?;
            match index.get(&image) {
                Some(&j) => candidates.push(transversal[j].1.invert().multiply(&st)?),
                None => {
                    if transversal.len() >= cap {
                        return Err(Error::BoundExceeded { cap });
                    }
                    index.insert(image.clone(), transversal.len());
                    transversal.push((image, st));
                }
            }
        }
        i += 1;
    }
    let keyed: Vec<Option<crate::decide::CanonicalKey>> = candidates
        .par_iter()
        .map(|c| (!c.is_empty() && !is_trivial(c)).then(|| canonical_key(c)))
        .collect();
    let mut seen = HashSet::new();
    let mut gens = Vec::new();
    for (c, k) in candidates.into_iter().zip(keyed) {
        if let Some(k) = k {
            if seen.insert(k) {
                gens.push(c);
            }
        }
    }
    if gens.is_empty() {
        gens.push(Element::identity(group));
    }
    Ok((transversal, gens))
}

/// Generators of the level stabilizer `St_{⟨S⟩}(n)`.
pub fn stabilizer_gens(s: &GenSet, level: usize) -> Result<StabilizerGens> {
    stabilizer_gens_capped(s, level, DEFAULT_ORBIT_CAP)
}

pub fn stabilizer_gens_capped(s: &GenSet, level: usize, cap: usize) -> Result<StabilizerGens> {
    let group = s.group();
    let action = LevelAction::new(group, level);
    let base: Vec<u32> = (0..action.width() as u32).collect();
    let perms: Vec<Vec<u32>> = s
        .elements()
        .iter()
        .map(|g| action.word_perm(g.letters()))
        .collect();
    let (transversal, generators) = schreier(
        s,
        base,
        |gi, p: &Vec<u32>| p.iter().map(|&x| perms[gi][x as usize]).collect(),
        cap,
    )?;
    Ok(StabilizerGens {
        target: StabTarget::Level(level),
        generators,
        transversal: transversal
            .into_iter()
            .map(|(p, element)| TransversalEntry {
                point: level_perm_label(&p, level, group.degree()),
                element,
            })
            .collect(),
    })
}

/// Generators of the vertex stabilizer `Stab_{⟨S⟩}(v)`.
pub fn vertex_stabilizer_gens(s: &GenSet, v: &Vertex) -> Result<StabilizerGens> {
    let group = s.group();
    let d = group.degree();
    v.check(d)?;
    let action = LevelAction::new(group, v.len());
    let perms: Vec<Vec<u32>> = s
        .elements()
        .iter()
        .map(|g| action.word_perm(g.letters()))
        .collect();
    let (transversal, generators) = schreier(
        s,
        v.index(d) as u32,
        |gi, &x: &u32| perms[gi][x as usize],
        DEFAULT_ORBIT_CAP,
    )?;
    Ok(StabilizerGens {
        target: StabTarget::Vertex(v.clone()),
        generators,
        transversal: transversal
            .into_iter()
            .map(|(x, element)| TransversalEntry {
                point: Vertex::from_index(x as usize, v.len(), d).to_string(),
                element,
            })
            .collect(),
    })
}

/// Sections at `v` of the generators of `Stab_{⟨S⟩}(v)`; they generate
/// `p_v(Stab(v))`. Trivial and repeated sections are dropped; a trivial
/// projection is generated by the identity alone.
pub fn projection_gens(s: &GenSet, v: &Vertex) -> Result<GenSet> {
    let stab = vertex_stabilizer_gens(s, v)?;
    let mut seen = HashSet::new();
    let mut named = Vec::new();
    for g in &stab.generators {
        let p = g.section(v)?;
        if !is_trivial(&p) && seen.insert(canonical_key(&p)) {
            named.push((format!("p({g})"), p));
        }
    }
    if named.is_empty() {
        named.push(("1".to_string(), Element::identity(s.group())));
    }
    GenSet::new(named)
}

/// `g` is a nontrivial element of `rist(v)`: it fixes level `|v|` and its
/// section at every other vertex of that level is trivial.
pub fn is_rist_witness(g: &Element, v: &Vertex) -> bool {
    if v.check(g.group().degree()).is_err() || is_trivial(g) {
        return false;
    }
    fn walk(node: &PortraitNode, v: &Vertex) -> bool {
        match node {
            PortraitNode::Internal { perm, children, .. } => {
                perm.is_identity() && children.iter().all(|c| walk(c, v))
            }
            PortraitNode::Leaf { vertex, residual } => vertex == v || is_trivial(residual),
        }
    }
    walk(&portrait(g, v.len()).root, v)
}

/// Elements of the ball of radius `max_len` that witness `rist_{⟨S⟩}(v)`.
/// This is a bounded search; an empty result proves nothing.
pub fn rist_elements(s: &GenSet, v: &Vertex, max_len: usize) -> Result<Vec<Element>> {
    v.check(s.group().degree())?;
    let ball = crate::ball::enumerate_ball(s, max_len, crate::ball::DEFAULT_BALL_CAP)?;
    let all: Vec<&Element> = ball.spheres.iter().flatten().collect();
    let flags: Vec<bool> = all.par_iter().map(|g| is_rist_witness(g, v)).collect();
    Ok(all
        .into_iter()
        .zip(flags)
        .filter(|(_, ok)| *ok)
        .map(|(g, _)| g.clone())
        .collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct Stabilization {
    /// First level from which orbit counts stay constant.
    pub n0: usize,
    /// One chain per orbit of level `n0`: orbit indices on levels `n0..=depth`,
    /// each the unique orbit containing all children of the previous one.
    pub chains: Vec<Vec<usize>>,
    /// `e` is a bijection on every level pair from `n0` on.
    pub singleton_fibers: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainReport {
    pub vertex: Vertex,
    pub depth: usize,
    /// Orbit counts on levels `0..=depth` of the subtree below `vertex`.
    pub counts: Vec<usize>,
    pub stabilized: Option<Stabilization>,
    /// Orbit table of the subtree, vertices relative to `vertex`.
    pub table: OrbitTable,
}

/// Orbit structure of `p_v(Stab_{⟨S⟩}(v))` on the subtree below `v`.
///
/// When every element of `S` fixes `v` this is just `⟨S⟩` restricted to the
/// subtree. Counts are reported raw; stabilization is declared when the
/// count at `depth` already occurs at some earlier level.
pub fn orbit_chain(s: &GenSet, v: &Vertex, depth: usize) -> Result<ChainReport> {
    let proj = projection_gens(s, v)?;
    let table = orbits(&proj, depth);
    let counts = table.counts();
    let last = counts[depth];
    let n0 = (0..=depth).find(|&n| counts[n..].iter().all(|&c| c == last));
    let stabilized = n0.filter(|&n0| n0 < depth).map(|n0| {
        let mut singleton_fibers = true;
        let mut chains = Vec::new();
        for start in 0..counts[n0] {
            let mut chain = vec![start];
            for level in n0 + 1..=depth {
                let prev = *chain.last().unwrap();
                let kids: Vec<usize> = table.levels[level]
                    .parent
                    .iter()
                    .enumerate()
                    .filter(|(_, &p)| p == prev)
                    .map(|(i, _)| i)
                    .collect();
                if kids.len() != 1 {
                    singleton_fibers = false;
                }
                chain.push(kids[0]);
            }
            chains.push(chain);
        }
        Stabilization {
            n0,
            chains,
            singleton_fibers,
        }
    });
    Ok(ChainReport {
        vertex: v.clone(),
        depth,
        counts,
        stabilized,
        table,
    })
}

/// Output of the commutator construction.
#[derive(Clone, Debug, Serialize)]
pub struct CommutatorWitness {
    /// The presentation extended by states realizing `h`.
    #[serde(skip)]
    pub group: Arc<GroupDef>,
    pub h: Element,
    pub commutator: Element,
    /// Vertex `k.m` at which the commutator's section is checked.
    pub vertex: Vertex,
    pub section: Element,
    pub verified: bool,
}

/// Builds `h` with `h|_k = (1, …, w, …, 1)` (`w` in position `m`, all root
/// permutations trivial) and returns `[g, h] = g⁻¹h⁻¹gh`, whose section at
/// `k.m` equals `w` whenever `g` fixes the first level and the root
/// permutation of `g|_k` moves `m`.
///
/// `h` is generally not in `⟨states⟩`, so it is realized by extending the
/// presentation with the section closure of `w` and two new states. Slot
/// indices `k`, `m` are 1-based.
pub fn commutator_witness(
    g: &Element,
    k: usize,
    m: usize,
    w: &Element,
) -> Result<CommutatorWitness> {
    if !g.same_group(w) {
        return Err(Error::MixedGroups);
    }
    let group = g.group();
    let d = group.degree();
    for x in [k, m] {
        if x == 0 || x > d {
            return Err(Error::BadVertex(x.to_string()));
        }
    }
    if !g.root_perm().is_identity() {
        return Err(Error::NotLevelFixing);
    }
    let gbar = g.section(&Vertex::from_letters(vec![(k - 1) as u8]))?;
    if gbar.root_perm().apply(m - 1) == m - 1 {
        return Err(Error::PermFixesM { m });
    }

    // states for w's sections; slot j carries the section landing on letter j
    let closure = crate::decide::section_closure(w);
    let names: Vec<String> = (0..closure.len())
        .map(|i| group.fresh_name(&format!("w{i}_")))
        .collect();
    let state_name = |i: usize| -> String {
        if closure.states[i].element.is_empty() {
            IDENTITY.to_string()
        } else {
            names[i].clone()
        }
    };
    let mut extra: Vec<StateSpec> = Vec::new();
    for (i, st) in closure.states.iter().enumerate() {
        if st.element.is_empty() {
            continue;
        }
        let inv = st.perm.inverse();
        let slots = (0..d)
            .map(|j| state_name(st.children[inv.apply(j)]))
            .collect();
        extra.push(StateSpec {
            name: names[i].clone(),
            slots,
            perm: st.perm.clone(),
        });
    }
    let hbar_name = group.fresh_name("hbar_");
    let h_name = group.fresh_name("h_");
    let mut hbar_slots = vec![IDENTITY.to_string(); d];
    hbar_slots[m - 1] = state_name(0);
    let mut h_slots = vec![IDENTITY.to_string(); d];
    h_slots[k - 1] = hbar_name.clone();
    extra.push(StateSpec {
        name: hbar_name,
        slots: hbar_slots,
        perm: Perm::identity(d),
    });
    extra.push(StateSpec {
        name: h_name.clone(),
        slots: h_slots,
        perm: Perm::identity(d),
    });

    let ext = Arc::new(group.extend(&format!("{}+h", group.name()), &extra)?);
    let h = Element::generator(&ext, ext.state_index(&h_name).expect("just added"));
    let g_ext = g.lift_to(&ext);
    let w_ext = w.lift_to(&ext);
    let commutator = g_ext.commutator(&h)?;
    let vertex = Vertex::from_letters(vec![(k - 1) as u8, (m - 1) as u8]);
    let section = commutator.section(&vertex)?;
    let verified = equals(&section, &w_ext)?;
    Ok(CommutatorWitness {
        group: ext,
        h,
        commutator,
        vertex,
        section,
        verified,
    })
}

/// `[g, h]` is trivial; used to check that rigid stabilizers of distinct
/// vertices on one level commute.
pub fn commute(g: &Element, h: &Element) -> Result<bool> {
    Ok(is_trivial_word(g.group(), g.commutator(h)?.letters()))
}
