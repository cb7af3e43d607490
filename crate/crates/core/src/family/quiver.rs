use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::{self, Write as _};

use serde::Serialize;

use super::{module_name, LambdaFamily, ProjPoint};
use crate::algebra::Side;
use crate::error::Result;
use crate::module::Module;

/// Node marker: bullet for torsionless and extensionless, black square for
/// extensionless only, black lozenge for torsionless only, circle otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Category {
    Bullet,
    BlackSquare,
    BlackLozenge,
    Circle,
}

impl Category {
    pub fn from_flags(torsionless: bool, extensionless: bool) -> Category {
        match (torsionless, extensionless) {
            (true, true) => Category::Bullet,
            (false, true) => Category::BlackSquare,
            (true, false) => Category::BlackLozenge,
            (false, false) => Category::Circle,
        }
    }

    fn dot_attributes(self) -> &'static str {
        match self {
            Category::Bullet => "shape=point",
            Category::BlackSquare => "shape=square, style=filled, fillcolor=black",
            Category::BlackLozenge => "shape=diamond, style=filled, fillcolor=black",
            Category::Circle => "shape=circle",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuiverNode {
    pub id: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<ProjPoint>,
    /// A cosyzygy outside the three-dimensional family, kept as computed data.
    pub opaque: bool,
    pub dim: usize,
    pub loewy_length: usize,
    pub torsionless: bool,
    pub extensionless: bool,
    pub category: Category,
}

/// `source → target` stands for an exact sequence `0 → source → Λ^rank → target → 0`
/// with `source ≅ Ω target` and `target ≅ ℧ source`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuiverEdge {
    pub source: String,
    pub target: String,
    pub rank: usize,
    /// Both isomorphisms were certified and the dimensions add up to `6·rank`.
    pub certified: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComponentShape {
    Cycle(usize),
    A(usize),
    /// Starts at a node without Ω-predecessor; continues beyond the depth in the ℧ direction.
    NatChain,
    /// Ends at a node without ℧-successor; continues beyond the depth in the Ω direction.
    NegNatChain,
    /// Truncated at both ends.
    ZTruncated,
    Singleton,
}

impl fmt::Display for ComponentShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentShape::Cycle(n) => write!(f, "Cycle({n})"),
            ComponentShape::A(n) => write!(f, "A({n})"),
            ComponentShape::NatChain => write!(f, "NatChain"),
            ComponentShape::NegNatChain => write!(f, "NegNatChain"),
            ComponentShape::ZTruncated => write!(f, "ZTruncated"),
            ComponentShape::Singleton => write!(f, "Singleton"),
        }
    }
}

impl Serialize for ComponentShape {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    pub shape: ComponentShape,
    /// In arrow order, from the Ω end to the ℧ end.
    pub nodes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuiverGraph {
    pub schema: u32,
    pub field: String,
    pub q: String,
    pub side: Side,
    pub depth: usize,
    pub nodes: Vec<QuiverNode>,
    pub edges: Vec<QuiverEdge>,
    pub components: Vec<Component>,
}

impl QuiverGraph {
    pub fn node(&self, id: &str) -> Option<&QuiverNode> {
        self.nodes.iter().find(|n| n.id == id)
    }

    pub fn component_of(&self, id: &str) -> Option<&Component> {
        self.components.iter().find(|c| c.nodes.iter().any(|n| n == id))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("graph serializes")
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        writeln!(out, "digraph quiver {{").unwrap();
        writeln!(out, "  rankdir=LR;").unwrap();
        for n in &self.nodes {
            let label = if n.category == Category::Bullet { "xlabel" } else { "label" };
            writeln!(
                out,
                "  \"{}\" [{}, {label}=\"{}\"];",
                n.id,
                n.category.dot_attributes(),
                n.id
            )
            .unwrap();
        }
        for e in &self.edges {
            writeln!(out, "  \"{}\" -> \"{}\";", e.source, e.target).unwrap();
        }
        writeln!(out, "}}").unwrap();
        out
    }
}

enum Step {
    Point(ProjPoint),
    Opaque,
}

struct Builder<'a> {
    fam: &'a LambdaFamily,
    side: Side,
    nodes: BTreeMap<String, QuiverNode>,
    modules: HashMap<String, Module>,
    edges: BTreeMap<(String, String), usize>,
}

impl<'a> Builder<'a> {
    fn point_id(&self, p: &ProjPoint) -> String {
        format!("{}{p}", module_name(self.side))
    }

    fn opaque_id(&self, p: &ProjPoint) -> String {
        format!("℧{}{p}", module_name(self.side))
    }

    /// Adds a point node; returns its id and whether it was new.
    fn add_point(&mut self, p: &ProjPoint) -> (String, bool) {
        let id = self.point_id(p);
        if self.nodes.contains_key(&id) {
            return (id, false);
        }
        let m = self.fam.module_m(p, self.side);
        let r = self.fam.classify_closed_form(p, self.side);
        self.nodes.insert(
            id.clone(),
            QuiverNode {
                id: id.clone(),
                point: Some(p.clone()),
                opaque: false,
                dim: m.dim(),
                loewy_length: m.loewy_length(),
                torsionless: r.torsionless,
                extensionless: r.extensionless,
                category: Category::from_flags(r.torsionless, r.extensionless),
            },
        );
        self.modules.insert(id.clone(), m);
        (id, true)
    }

    /// Adds the cosyzygy of a point node as an opaque node, with its edge.
    fn add_opaque(&mut self, p: &ProjPoint, source: &str) -> Result<()> {
        let id = self.opaque_id(p);
        if self.nodes.contains_key(&id) {
            return Ok(());
        }
        let m = self.modules[source].clone();
        let approx = m.left_approximation_minimal()?;
        let co = approx.map.cokernel().module;
        let torsionless = co.is_torsionless()?.value;
        let extensionless = co.is_extensionless()?.value;
        self.nodes.insert(
            id.clone(),
            QuiverNode {
                id: id.clone(),
                point: None,
                opaque: true,
                dim: co.dim(),
                loewy_length: co.loewy_length(),
                torsionless,
                extensionless,
                category: Category::from_flags(torsionless, extensionless),
            },
        );
        self.modules.insert(id.clone(), co);
        self.edges.insert((source.to_string(), id), approx.rank);
        Ok(())
    }

    fn flags(&self, p: &ProjPoint) -> (bool, bool) {
        let r = self.fam.classify_closed_form(p, self.side);
        (r.torsionless, r.extensionless)
    }

    /// The point `N` with an edge `N → p`, if one exists.
    fn omega_pred(&self, p: &ProjPoint) -> Option<ProjPoint> {
        let (_, ext) = self.flags(p);
        if !p.is_affine() || !ext {
            return None;
        }
        let f = self.fam.field();
        match self.side {
            Side::Left => p.omega(f),
            Side::Right => p.omega_prime(f),
        }
    }

    /// Where the edge out of `p` leads, if one exists.
    fn mho_succ(&self, p: &ProjPoint) -> Option<Step> {
        let (tl, _) = self.flags(p);
        if !tl {
            return None;
        }
        if !p.is_affine() {
            return Some(Step::Opaque);
        }
        let f = self.fam.field();
        match self.side {
            Side::Left => p.omega_prime(f).map(Step::Point),
            Side::Right => match p.omega(f) {
                Some(w) if self.flags(&w).1 => Some(Step::Point(w)),
                _ => Some(Step::Opaque),
            },
        }
    }

    fn walk(&mut self, seed: &ProjPoint, depth: usize) -> Result<()> {
        self.add_point(seed);
        let mut cur = seed.clone();
        for _ in 0..depth {
            let Some(pred) = self.omega_pred(&cur) else { break };
            let (pid, fresh) = self.add_point(&pred);
            self.edges.insert((pid, self.point_id(&cur)), 1);
            if !fresh {
                break;
            }
            cur = pred;
        }
        let mut cur = seed.clone();
        for _ in 0..depth {
            let cid = self.point_id(&cur);
            match self.mho_succ(&cur) {
                None => break,
                Some(Step::Opaque) => {
                    self.add_opaque(&cur, &cid)?;
                    break;
                }
                Some(Step::Point(next)) => {
                    let (nid, fresh) = self.add_point(&next);
                    self.edges.insert((cid, nid), 1);
                    if !fresh {
                        break;
                    }
                    cur = next;
                }
            }
        }
        Ok(())
    }

    fn certify(&self, source: &str, target: &str, rank: usize) -> Result<bool> {
        let n = &self.modules[source];
        let m = &self.modules[target];
        let dims = n.dim() + m.dim() == rank * self.fam.algebra(self.side).dim();
        let omega = m.syzygy().is_isomorphic(n)?.value;
        let mho = n.cosyzygy()?.module.is_isomorphic(m)?.value;
        Ok(dims && omega && mho)
    }

    fn open_start(&self, id: &str) -> bool {
        let node = &self.nodes[id];
        match &node.point {
            Some(p) => self.omega_pred(p).is_some(),
            None => true,
        }
    }

    fn open_end(&self, id: &str) -> bool {
        let node = &self.nodes[id];
        match &node.point {
            Some(p) => self.mho_succ(p).is_some(),
            None => node.torsionless,
        }
    }

    fn components(&self) -> Vec<Component> {
        let succ: BTreeMap<&str, &str> =
            self.edges.keys().map(|(s, t)| (s.as_str(), t.as_str())).collect();
        let pred: BTreeMap<&str, &str> =
            self.edges.keys().map(|(s, t)| (t.as_str(), s.as_str())).collect();
        let mut seen: BTreeSet<&str> = BTreeSet::new();
        let mut out = Vec::new();
        for id in self.nodes.keys() {
            if seen.contains(id.as_str()) {
                continue;
            }
            // Walk back to the start of the path, or around a cycle.
            let mut start = id.as_str();
            let mut cyclic = false;
            while let Some(&p) = pred.get(start) {
                start = p;
                if start == id {
                    cyclic = true;
                    break;
                }
            }
            let mut nodes = vec![start.to_string()];
            seen.insert(start);
            let mut cur = start;
            while let Some(&n) = succ.get(cur) {
                if n == start {
                    break;
                }
                nodes.push(n.to_string());
                seen.insert(n);
                cur = n;
            }
            let shape = if cyclic {
                ComponentShape::Cycle(nodes.len())
            } else {
                let first = nodes.first().expect("non-empty");
                let last = nodes.last().expect("non-empty");
                match (self.open_start(first), self.open_end(last)) {
                    (false, false) if nodes.len() == 1 => ComponentShape::Singleton,
                    (false, false) => ComponentShape::A(nodes.len()),
                    (false, true) => ComponentShape::NatChain,
                    (true, false) => ComponentShape::NegNatChain,
                    (true, true) => ComponentShape::ZTruncated,
                }
            };
            if cyclic {
                // Rotate so the listing starts at the smallest id.
                let k = nodes.iter().enumerate().min_by_key(|(_, n)| *n).map_or(0, |(k, _)| k);
                nodes.rotate_left(k);
            }
            out.push(Component { shape, nodes });
        }
        out.sort_by(|a, b| a.nodes.first().cmp(&b.nodes.first()));
        out
    }
}

impl LambdaFamily {
    /// Walks the Ω℧-quiver from each seed up to `depth` steps in each
    /// direction and certifies every edge.
    pub fn quiver_build(&self, seeds: &[ProjPoint], side: Side, depth: usize) -> Result<QuiverGraph> {
        let mut b = Builder {
            fam: self,
            side,
            nodes: BTreeMap::new(),
            modules: HashMap::new(),
            edges: BTreeMap::new(),
        };
        for seed in seeds {
            b.walk(seed, depth.max(1))?;
        }
        let mut edges = Vec::with_capacity(b.edges.len());
        for ((s, t), &rank) in &b.edges {
            edges.push(QuiverEdge {
                source: s.clone(),
                target: t.clone(),
                rank,
                certified: b.certify(s, t, rank)?,
            });
        }
        let components = b.components();
        Ok(QuiverGraph {
            schema: 1,
            field: self.field.kind().to_string(),
            q: self.field.q().to_string(),
            side,
            depth,
            nodes: b.nodes.into_values().collect(),
            edges,
            components,
        })
    }
}
