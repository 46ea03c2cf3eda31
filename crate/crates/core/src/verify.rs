//! Helly numbers, bound checks on concrete families, and random instances.

use std::collections::HashMap;
use std::fmt::{self, Write as _};
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::families::{grid_triangulation, FamilyError, OpenBox, Rational, SetFamily};
use crate::homology::reduced_betti;
use crate::io::{write_family, write_poset};
use crate::leray::{j_index, leray_number, LerayConfig, LerayError, LerayReport};
use crate::nerve::{canonical_projection, multinerve, reduced_multinerve, LabeledPoset, MonotoneMap};
use crate::poset::{RawCell, SimplicialPoset};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("family has no members")]
    EmptyFamily,
    #[error("family has non-empty intersection")]
    NonEmptyIntersection,
    #[error("family is not acyclic with slack {s}: reduced homology of the intersection of {members:?} is non-zero in dimension {dim}")]
    SlackViolated { s: usize, members: Vec<usize>, dim: i32 },
    #[error("{0}")]
    Family(#[from] FamilyError),
    #[error("{0}")]
    Leray(#[from] LerayError),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HellyMode {
    /// Every minimal non-face of the nerve is examined.
    Exhaustive,
    /// Only sub-families of size up to `bound + 1` are examined; a result
    /// above `bound` is still detected but may not be the maximum.
    Fast { bound: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HellyResult {
    pub h: usize,
    /// Lexicographically first largest inclusion-minimal sub-family with
    /// empty intersection.
    pub witness: Vec<usize>,
}

/// The Helly number: the size of the largest sub-family with empty
/// intersection all of whose proper sub-families intersect. These are the
/// minimal non-faces of the nerve, where the empty sub-family counts as a
/// face.
pub fn helly_number(f: &SetFamily, mode: HellyMode) -> Result<HellyResult, VerifyError> {
    if f.is_empty() {
        return Err(VerifyError::EmptyFamily);
    }
    let all: Vec<usize> = (0..f.len()).collect();
    if !f.intersection_is_empty(&all)? {
        return Err(VerifyError::NonEmptyIntersection);
    }
    let mut faces = f.intersecting_subsets()?;
    faces.insert(0, Vec::new());
    let limit = match mode {
        HellyMode::Exhaustive => usize::MAX,
        HellyMode::Fast { bound } => bound,
    };
    let present: std::collections::HashSet<&Vec<usize>> = faces.iter().collect();
    let mut best: Option<Vec<usize>> = None;
    for a in faces.iter().filter(|a| a.len() <= limit) {
        let start = a.last().map_or(0, |&m| m + 1);
        for j in start..f.len() {
            let mut g = a.clone();
            g.push(j);
            if present.contains(&g) {
                continue;
            }
            let minimal = (0..g.len()).all(|skip| {
                let sub: Vec<usize> = g.iter().enumerate().filter(|(k, _)| *k != skip).map(|(_, &m)| m).collect();
                present.contains(&sub)
            });
            if minimal && best.as_ref().is_none_or(|b| (g.len(), std::cmp::Reverse(&g)) > (b.len(), std::cmp::Reverse(b))) {
                best = Some(g);
            }
        }
    }
    let witness = best.expect("the full family has empty intersection, so a minimal non-face exists");
    Ok(HellyResult { h: witness.len(), witness })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub lhs: i64,
    pub relation: Relation,
    pub rhs: i64,
    pub pass: bool,
}

impl Check {
    fn le(name: impl Into<String>, lhs: i64, rhs: i64) -> Self {
        Check {
            name: name.into(),
            lhs,
            relation: Relation::Le,
            rhs,
            pass: lhs <= rhs,
        }
    }

    fn eq(name: impl Into<String>, lhs: i64, rhs: i64) -> Self {
        Check {
            name: name.into(),
            lhs,
            relation: Relation::Eq,
            rhs,
            pass: lhs == rhs,
        }
    }

    /// `rhs - lhs` for inequalities.
    pub fn margin(&self) -> Option<i64> {
        (self.relation == Relation::Le).then_some(self.rhs - self.lhs)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = match self.relation {
            Relation::Le => "<=",
            Relation::Eq => "==",
        };
        let status = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "CHECK {}: {} {} {} : {}", self.name, self.lhs, rel, self.rhs, status)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub kind: &'static str,
    pub instance: String,
    pub measured: Vec<(String, String)>,
    pub checks: Vec<Check>,
    pub witnesses: Vec<(String, String)>,
    /// Full family text, embedded when a check fails.
    pub bundle: Option<String>,
}

impl BoundReport {
    fn new(kind: &'static str, f: &SetFamily) -> Self {
        BoundReport {
            kind,
            instance: instance_hash(f),
            measured: Vec::new(),
            checks: Vec::new(),
            witnesses: Vec::new(),
            bundle: None,
        }
    }

    fn measure(&mut self, key: &str, value: impl ToString) {
        self.measured.push((key.to_string(), value.to_string()));
    }

    fn witness(&mut self, key: &str, value: impl ToString) {
        self.witnesses.push((key.to_string(), value.to_string()));
    }

    fn finish(mut self, f: &SetFamily) -> Self {
        if !self.passed() {
            self.bundle = Some(write_family(f));
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.measured.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn get_i64(&self, key: &str) -> Option<i64> {
        self.get(key).and_then(|v| v.split_whitespace().next()?.parse().ok())
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// `report v1` text.
    pub fn to_report_v1(&self) -> String {
        let mut s = String::from("report v1\n");
        writeln!(s, "kind = {}", self.kind).unwrap();
        writeln!(s, "instance = {}", self.instance).unwrap();
        for (k, v) in &self.measured {
            writeln!(s, "{k} = {v}").unwrap();
        }
        for c in &self.checks {
            writeln!(s, "{c}").unwrap();
            if let Some(m) = c.margin() {
                writeln!(s, "margin.{} = {m}", c.name).unwrap();
            }
        }
        for (k, v) in &self.witnesses {
            writeln!(s, "witness.{k} = {v}").unwrap();
        }
        writeln!(s, "status = {}", if self.passed() { "PASS" } else { "FAIL" }).unwrap();
        if let Some(b) = &self.bundle {
            s.push_str("begin bundle\n");
            s.push_str(b);
            s.push_str("end bundle\n");
        }
        s
    }
}

/// First 16 hex digits of the SHA-256 of the canonical `family v1` text.
pub fn instance_hash(f: &SetFamily) -> String {
    let digest = Sha256::digest(write_family(f).as_bytes());
    hex::encode(&digest[..8])
}

fn require_slack(f: &SetFamily, s: usize) -> Result<(), VerifyError> {
    let a = f.is_acyclic_with_slack(s)?;
    match a.violation {
        None => Ok(()),
        Some((members, dim)) => Err(VerifyError::SlackViolated { s, members, dim }),
    }
}

fn gamma_text(f: &SetFamily) -> String {
    if f.gamma_dim_is_assumed() {
        format!("{} (assumed)", f.gamma_dim())
    } else {
        f.gamma_dim().to_string()
    }
}

fn witness_text(r: &LerayReport) -> String {
    match &r.witness {
        None => "none".into(),
        Some(w) => {
            let s: Vec<String> = w.vertices.iter().map(|v| v.to_string()).collect();
            let cell = w.cell.map_or("-".into(), |c| c.to_string());
            format!("S={{{}}} j={} sigma={}", s.join(","), w.dim, cell)
        }
    }
}

fn set_text(a: &[usize]) -> String {
    let s: Vec<String> = a.iter().map(|m| m.to_string()).collect();
    format!("{{{}}}", s.join(","))
}

/// Homology of the multinerve against the union: with `F` acyclic with slack
/// `s`, `β̃_ℓ(M(F)) = β̃_ℓ(⋃F)` for all `ℓ ≥ s`. Both sides are compared in
/// every dimension from `s` up to one past the larger top dimension.
pub fn verify_multinerve_homology(f: &SetFamily, s: usize) -> Result<BoundReport, VerifyError> {
    require_slack(f, s)?;
    let m = multinerve(f)?;
    let bm = reduced_betti(&m.poset);
    let bu = f.region_betti(&[])?;
    let mut report = BoundReport::new("multinerve", f);
    report.measure("members", f.len());
    report.measure("s", s);
    report.measure("betti_multinerve", &bm);
    report.measure("betti_union", &bu);
    let top = bm.top().unwrap_or(-1).max(bu.top().unwrap_or(-1)) + 1;
    for l in s as i32..=top.max(s as i32) {
        report.checks.push(Check::eq(format!("homology_{l}"), bm.get(l) as i64, bu.get(l) as i64));
    }
    Ok(report.finish(f))
}

/// Cells of `x` of dimension `>= k` are mapped bijectively onto those of `y`.
fn bijective_from(map: &MonotoneMap, x: &SimplicialPoset, y: &SimplicialPoset, k: i32) -> bool {
    let mut hit = vec![false; y.len()];
    for c in x.cell_ids().filter(|&c| x.dim(c) >= k) {
        let t = map.apply(c);
        if hit[t.index()] {
            return false;
        }
        hit[t.index()] = true;
    }
    y.cell_ids().filter(|&c| y.dim(c) >= k).all(|c| hit[c.index()])
}

/// Everything measured on the multinerve side of a family.
pub struct ProjectionData {
    pub multinerve: LabeledPoset,
    pub reduced: LabeledPoset,
    pub nerve: LabeledPoset,
    pub reduction: MonotoneMap,
    pub projection: MonotoneMap,
    pub l_nerve: LerayReport,
    pub l_multinerve: LerayReport,
    pub j_multinerve: LerayReport,
    pub l_reduced: LerayReport,
    pub j_reduced: LerayReport,
}

pub fn projection_data(f: &SetFamily, t: usize, cfg: &LerayConfig) -> Result<ProjectionData, VerifyError> {
    if t == 0 {
        return Err(VerifyError::InvalidParams("t must be at least 1".into()));
    }
    let m = multinerve(f)?;
    let (red, reduction) = reduced_multinerve(f, t)?;
    let (nerve, projection) = canonical_projection(&red);
    let ((l_nerve, l_multinerve), (j_multinerve, (l_reduced, j_reduced))) = rayon::join(
        || (leray_number(&nerve.poset, cfg), leray_number(&m.poset, cfg)),
        || (j_index(&m.poset, cfg), rayon::join(|| leray_number(&red.poset, cfg), || j_index(&red.poset, cfg))),
    );
    Ok(ProjectionData {
        multinerve: m,
        reduced: red,
        nerve,
        reduction,
        projection,
        l_nerve: l_nerve?,
        l_multinerve: l_multinerve?,
        j_multinerve: j_multinerve?,
        l_reduced: l_reduced?,
        j_reduced: j_reduced?,
    })
}

/// The projection bound `L(N) ≤ r·J(M_red) + r − 1` with `r` the largest
/// fiber of `π: M_red → N`, together with `L ≤ J` on both posets,
/// `J(M_red) ≤ max(J(M), t)`, the properties of both maps, and, when a slack
/// is given (and verified), `J(M) ≤ max(d_Γ, s)` and for `s ≤ 1` also
/// `L(M) ≤ d_Γ`.
pub fn verify_projection_bound(f: &SetFamily, t: usize, s: Option<usize>, cfg: &LerayConfig) -> Result<BoundReport, VerifyError> {
    if let Some(s) = s {
        require_slack(f, s)?;
    }
    let d = projection_data(f, t, cfg)?;
    let r = d.projection.max_fiber as i64;
    let (ln, lm, jm, lr, jr) = (
        d.l_nerve.value as i64,
        d.l_multinerve.value as i64,
        d.j_multinerve.value as i64,
        d.l_reduced.value as i64,
        d.j_reduced.value as i64,
    );
    let gamma = f.gamma_dim() as i64;
    let mut report = BoundReport::new("projection", f);
    report.measure("members", f.len());
    report.measure("t", t);
    if let Some(s) = s {
        report.measure("s", s);
    }
    report.measure("d_gamma", gamma_text(f));
    report.measure("r", r);
    report.measure("L_nerve", ln);
    report.measure("L_multinerve", lm);
    report.measure("J_multinerve", jm);
    report.measure("L_reduced", lr);
    report.measure("J_reduced", jr);
    report.measure("cells_multinerve", d.multinerve.poset.len());
    report.measure("cells_reduced", d.reduced.poset.len());
    report.measure("cells_nerve", d.nerve.poset.len());
    report.measure("mode", d.l_nerve.mode);

    report.checks.push(Check::le("projection_bound", ln, r * jr + r - 1));
    report.checks.push(Check::le("leray_le_j_multinerve", lm, jm));
    report.checks.push(Check::le("leray_le_j_reduced", lr, jr));
    report.checks.push(Check::le("reduction_j_bound", jr, jm.max(t as i64)));
    let red_ok = d.reduction.monotone
        && d.reduction.dimension_preserving
        && bijective_from(&d.reduction, &d.multinerve.poset, &d.reduced.poset, t as i32 - 1);
    report.checks.push(Check::eq("reduction_map_valid", red_ok as i64, 1));
    let fibers = d.projection.fiber_sizes(d.nerve.poset.len());
    let proj_ok = d.projection.monotone && d.projection.dimension_preserving && fibers.iter().all(|&c| c >= 1);
    report.checks.push(Check::eq("projection_map_valid", proj_ok as i64, 1));
    if let Some(s) = s {
        report.checks.push(Check::le("multinerve_j_bound", jm, gamma.max(s as i64)));
        if s <= 1 {
            report.checks.push(Check::le("multinerve_leray_bound", lm, gamma));
        }
    }
    report.witness("L_nerve", witness_text(&d.l_nerve));
    report.witness("J_reduced", witness_text(&d.j_reduced));
    report.witness("J_multinerve", witness_text(&d.j_multinerve));
    Ok(report.finish(f))
}

/// The Helly bound `h ≤ r·(max(d_Γ, s, t) + 1)` with `r` the largest number
/// of components of an intersection of at least `t` members (taken as 1 when
/// no such intersection is non-empty), and the link `h ≤ L(N) + 1`.
pub fn verify_helly_bound(
    f: &SetFamily,
    s: usize,
    t: usize,
    mode: HellyMode,
    cfg: &LerayConfig,
) -> Result<BoundReport, VerifyError> {
    if t == 0 {
        return Err(VerifyError::InvalidParams("t must be at least 1".into()));
    }
    if f.is_empty() {
        return Err(VerifyError::EmptyFamily);
    }
    let all: Vec<usize> = (0..f.len()).collect();
    if !f.intersection_is_empty(&all)? {
        return Err(VerifyError::NonEmptyIntersection);
    }
    require_slack(f, s)?;
    let table = f.max_components(t)?;
    let r = table.r.max(1) as i64;
    let gamma = f.gamma_dim() as i64;
    let bound = r * (gamma.max(s as i64).max(t as i64) + 1);
    let mode = match mode {
        HellyMode::Fast { .. } => HellyMode::Fast { bound: bound as usize },
        m => m,
    };
    let helly = helly_number(f, mode)?;
    let nerve = crate::nerve::nerve(f)?.to_poset();
    let ln = leray_number(&nerve, cfg)?;

    let mut report = BoundReport::new("helly", f);
    report.measure("members", f.len());
    report.measure("s", s);
    report.measure("t", t);
    report.measure("d_gamma", gamma_text(f));
    report.measure("r", r);
    let table_text: Vec<String> = table.per_size.iter().map(|c| c.to_string()).collect();
    report.measure("components_by_size", table_text.join(" "));
    report.measure("h", helly.h);
    report.measure("L_nerve", ln.value);
    report.measure(
        "helly_mode",
        match mode {
            HellyMode::Exhaustive => "exhaustive",
            HellyMode::Fast { .. } => "fast",
        },
    );
    report.checks.push(Check::le("helly_bound", helly.h as i64, bound));
    report.checks.push(Check::le("helly_leray", helly.h as i64, ln.value as i64 + 1));
    report.witness("helly", set_text(&helly.witness));
    report.witness("L_nerve", witness_text(&ln));
    Ok(report.finish(f))
}

/// Parameters of [`random_family`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RandomSpec {
    /// Box unions in `R^dim` with endpoints `k/2`, `0 <= k <= 2·extent`.
    Boxes {
        members: usize,
        dim: usize,
        boxes_per_member: usize,
        extent: i64,
    },
    /// Unions of closed vertex stars in the triangulated `grid × grid` square;
    /// with `rings`, each pick is a vertex link (a circle around an interior
    /// vertex) with probability 1/3.
    Subcomplex {
        members: usize,
        grid: usize,
        stars_per_member: usize,
        rings: bool,
    },
}

/// A reproducible pseudo-random family.
pub fn random_family(spec: &RandomSpec, seed: u64) -> Result<SetFamily, VerifyError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match *spec {
        RandomSpec::Boxes {
            members,
            dim,
            boxes_per_member,
            extent,
        } => {
            if members == 0 || dim == 0 || boxes_per_member == 0 || extent < 1 {
                return Err(VerifyError::InvalidParams("members, dim, boxes and extent must be positive".into()));
            }
            let top = 2 * extent;
            let fam = (0..members)
                .map(|_| {
                    (0..boxes_per_member)
                        .map(|_| {
                            let (lo, hi): (Vec<Rational>, Vec<Rational>) = (0..dim)
                                .map(|_| {
                                    let a = rng.random_range(0..top);
                                    let w = rng.random_range(1..=(top / 2).max(1));
                                    (Rational::new(a, 2), Rational::new((a + w).min(top), 2))
                                })
                                .unzip();
                            OpenBox::new(lo, hi).expect("widths are positive")
                        })
                        .collect()
                })
                .collect();
            Ok(SetFamily::boxes(dim, fam)?)
        }
        RandomSpec::Subcomplex {
            members,
            grid,
            stars_per_member,
            rings,
        } => {
            if members == 0 || grid == 0 || stars_per_member == 0 {
                return Err(VerifyError::InvalidParams("members, grid and stars must be positive".into()));
            }
            let t = grid_triangulation(&[grid, grid]);
            let verts = t.vertices();
            let interior: Vec<u32> = verts
                .iter()
                .copied()
                .filter(|&v| {
                    let (x, y) = (v as usize % (grid + 1), v as usize / (grid + 1));
                    x > 0 && y > 0 && x < grid && y < grid
                })
                .collect();
            let star = |v: u32, link: bool| -> Vec<usize> {
                (0..t.len())
                    .filter(|&id| {
                        let s = &t.simplices()[id];
                        if s.contains(&v) {
                            return !link;
                        }
                        let mut with = s.clone();
                        with.push(v);
                        with.sort_unstable();
                        t.contains(&with)
                    })
                    .collect()
            };
            let mut fam = Vec::with_capacity(members);
            for _ in 0..members {
                let mut ids: Vec<usize> = Vec::new();
                for _ in 0..stars_per_member {
                    let ring = rings && !interior.is_empty() && rng.random_bool(1.0 / 3.0);
                    let v = if ring { *interior.choose(&mut rng).unwrap() } else { *verts.choose(&mut rng).unwrap() };
                    ids.extend(star(v, ring));
                }
                fam.push(ids);
            }
            Ok(SetFamily::subcomplex(t, fam)?)
        }
    }
}

/// A reproducible random simplicial poset on `vertices` vertices. Each of
/// `attempts` rounds picks a dimension `1..=max_dim` and a vertex set, then
/// tries to choose, by increasing size, an existing cell over every proper
/// subset whose faces are the cells already chosen; on success a new cell is
/// added over the whole set (parallel cells are allowed).
pub fn random_poset(vertices: usize, max_dim: usize, attempts: usize, seed: u64) -> SimplicialPoset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut records = vec![RawCell::new(0, -1, vec![])];
    let mut over: HashMap<Vec<u32>, Vec<(u64, Vec<u64>)>> = HashMap::new();
    for v in 0..vertices as u32 {
        records.push(RawCell::new(v as u64 + 1, 0, vec![0]));
        over.insert(vec![v], vec![(v as u64 + 1, vec![0])]);
    }
    let max_dim = max_dim.min(vertices.saturating_sub(1));
    for _ in 0..attempts {
        if max_dim == 0 {
            break;
        }
        let k = rng.random_range(1..=max_dim);
        let mut set: Vec<u32> = rand::seq::index::sample(&mut rng, vertices, k + 1).into_iter().map(|v| v as u32).collect();
        set.sort_unstable();
        let mut chosen: HashMap<Vec<u32>, u64> = HashMap::new();
        let mut ok = true;
        'sizes: for size in 1..=k {
            for mask in 1u32..(1 << (k + 1)) {
                if mask.count_ones() as usize != size {
                    continue;
                }
                let sub: Vec<u32> = (0..=k).filter(|i| mask >> i & 1 == 1).map(|i| set[i]).collect();
                let want: Vec<u64> = if size == 1 {
                    vec![0]
                } else {
                    (0..size)
                        .map(|skip| {
                            let f: Vec<u32> = sub.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, &v)| v).collect();
                            chosen[&f]
                        })
                        .collect()
                };
                let cands: Vec<u64> = over
                    .get(&sub)
                    .map(|cs| cs.iter().filter(|(_, f)| *f == want).map(|(id, _)| *id).collect())
                    .unwrap_or_default();
                match cands.choose(&mut rng) {
                    Some(&id) => {
                        chosen.insert(sub, id);
                    }
                    None => {
                        ok = false;
                        break 'sizes;
                    }
                }
            }
        }
        if !ok {
            continue;
        }
        let faces: Vec<u64> = (0..=k)
            .map(|skip| {
                let f: Vec<u32> = set.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, &v)| v).collect();
                chosen[&f]
            })
            .collect();
        let id = records.len() as u64;
        records.push(RawCell::new(id, k as i32, faces.clone()));
        over.entry(set).or_default().push((id, faces));
    }
    SimplicialPoset::build(&records).expect("cells are glued along consistent lower segments")
}

/// Writes a poset with `L < J` as a commented `poset v1` file named by its
/// content hash. Returns `None` when `L = J`.
pub fn record_candidate(dir: &Path, p: &SimplicialPoset, l: &LerayReport, j: &LerayReport) -> std::io::Result<Option<PathBuf>> {
    if l.value >= j.value {
        return Ok(None);
    }
    fs::create_dir_all(dir)?;
    let body = write_poset(p);
    let name = hex::encode(&Sha256::digest(body.as_bytes())[..8]);
    let path = dir.join(format!("candidate-{name}.poset"));
    let mut text = format!("# L = {}\n# J = {}\n", l.value, j.value);
    writeln!(text, "# J witness: {}", witness_text(j)).unwrap();
    text.push_str(&body);
    fs::write(&path, text)?;
    Ok(Some(path))
}

/// Appends the report to `<dir>/<instance>.report`; failed instances also get
/// their family saved as `<dir>/<instance>.family`.
pub fn archive_report(dir: &Path, report: &BoundReport, f: &SetFamily) -> std::io::Result<()> {
    fs::create_dir_all(dir)?;
    let mut file = fs::OpenOptions::new().create(true).append(true).open(dir.join(format!("{}.report", report.instance)))?;
    file.write_all(report.to_report_v1().as_bytes())?;
    if !report.passed() {
        fs::write(dir.join(format!("{}.family", report.instance)), write_family(f))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::SimplicialComplex;

    fn iv(lo: i64, hi: i64, q: i64) -> Vec<OpenBox> {
        vec![OpenBox::from_ints(&[(lo, hi)], q).unwrap()]
    }

    fn c4_family() -> SetFamily {
        let t = SimplicialComplex::from_facets([[0u32, 1], [1, 2], [2, 3], [0, 3]]).unwrap();
        let ids = |ss: &[&[u32]]| ss.iter().map(|s| t.id_of(s).unwrap()).collect::<Vec<_>>();
        let upper = ids(&[&[1], &[2], &[3], &[1, 2], &[2, 3]]);
        let lower = ids(&[&[3], &[0], &[1], &[0, 3], &[0, 1]]);
        SetFamily::subcomplex(t.clone(), vec![upper, lower]).unwrap()
    }

    #[test]
    fn helly_examples() {
        let f = SetFamily::boxes(1, vec![iv(0, 4, 2), iv(2, 6, 2), iv(5, 8, 2)]).unwrap();
        let h = helly_number(&f, HellyMode::Exhaustive).unwrap();
        assert_eq!(h, HellyResult { h: 2, witness: vec![0, 2] });
        let g = SetFamily::boxes(1, vec![iv(0, 1, 1), vec![]]).unwrap();
        assert_eq!(helly_number(&g, HellyMode::Exhaustive).unwrap().h, 1);
        let b = |x0, x1, y0, y1| OpenBox::from_ints(&[(x0, x1), (y0, y1)], 1).unwrap();
        let tri = SetFamily::boxes(2, vec![vec![b(0, 3, 0, 1)], vec![b(2, 3, 0, 3)], vec![b(0, 3, 2, 3), b(0, 1, 0, 3)]]).unwrap();
        assert_eq!(helly_number(&tri, HellyMode::Exhaustive).unwrap().h, 3);
        let meet = SetFamily::boxes(1, vec![iv(0, 2, 1), iv(1, 3, 1)]).unwrap();
        assert_eq!(helly_number(&meet, HellyMode::Exhaustive), Err(VerifyError::NonEmptyIntersection));
    }

    #[test]
    fn interval_bound_is_tight() {
        let f = SetFamily::boxes(1, vec![iv(0, 4, 2), iv(2, 6, 2), iv(5, 8, 2)]).unwrap();
        let rep = verify_helly_bound(&f, 0, 1, HellyMode::Exhaustive, &LerayConfig::default()).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.get_i64("h"), Some(2));
        assert_eq!(rep.check("helly_bound").unwrap().margin(), Some(0));
        assert!(rep.to_report_v1().contains("CHECK helly_bound: 2 <= 2 : PASS\n"));
    }

    #[test]
    fn c4_reports() {
        let f = c4_family();
        let m = verify_multinerve_homology(&f, 0).unwrap();
        assert!(m.passed());
        assert_eq!(m.check("homology_1").unwrap().lhs, 1);
        let p = verify_projection_bound(&f, 1, Some(0), &LerayConfig::default()).unwrap();
        assert!(p.passed(), "{}", p.to_report_v1());
        assert_eq!(p.get_i64("r"), Some(2));
        assert_eq!(p.get_i64("J_multinerve"), Some(2));
        assert_eq!(p.get_i64("L_nerve"), Some(0));
    }

    #[test]
    fn slack_precondition_names_violation() {
        let t = SimplicialComplex::simplex_boundary(3);
        let all: Vec<usize> = (0..t.len()).collect();
        let f = SetFamily::subcomplex(t, vec![all]).unwrap();
        let err = verify_multinerve_homology(&f, 2).unwrap_err();
        assert_eq!(err, VerifyError::SlackViolated { s: 2, members: vec![0], dim: 1 });
        let ok = verify_multinerve_homology(&f, 3).unwrap();
        assert!(ok.passed());
        assert!(ok.checks.iter().all(|c| c.lhs == 0 && c.rhs == 0));
    }

    #[test]
    fn random_families_are_reproducible() {
        let spec = RandomSpec::Boxes {
            members: 3,
            dim: 1,
            boxes_per_member: 2,
            extent: 6,
        };
        assert_eq!(random_family(&spec, 0).unwrap(), random_family(&spec, 0).unwrap());
        let one = RandomSpec::Boxes {
            members: 1,
            dim: 2,
            boxes_per_member: 1,
            extent: 4,
        };
        assert_eq!(random_family(&one, 5).unwrap().len(), 1);
        let sub = RandomSpec::Subcomplex {
            members: 4,
            grid: 6,
            stars_per_member: 2,
            rings: true,
        };
        let f = random_family(&sub, 1).unwrap();
        assert_eq!(f.len(), 4);
        assert_eq!(f.ambient().unwrap().vertices().len(), 49);
        assert!(random_family(&RandomSpec::Boxes { members: 0, dim: 1, boxes_per_member: 1, extent: 1 }, 0).is_err());
    }

    #[test]
    fn random_posets_are_valid_and_reproducible() {
        for seed in 0..20 {
            let p = random_poset(5, 3, 30, seed);
            assert_eq!(p, random_poset(5, 3, 30, seed));
            assert_eq!(p.num_vertices(), 5);
        }
        assert!((0..20).any(|seed| !random_poset(4, 2, 20, seed).is_complex()));
    }

    #[test]
    fn failing_report_embeds_bundle() {
        let f = SetFamily::boxes(1, vec![iv(0, 1, 1)]).unwrap();
        let mut r = BoundReport::new("test", &f);
        r.checks.push(Check::le("x", 2, 1));
        let r = r.finish(&f);
        assert!(!r.passed());
        let text = r.to_report_v1();
        assert!(text.contains("begin bundle\nfamily v1 box 1\n"));
        assert!(text.contains("status = FAIL"));
    }
}
