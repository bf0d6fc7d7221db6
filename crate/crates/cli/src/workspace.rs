//! Named structures loaded from JSON configuration files.
//!
//! Loading is lenient about law violations: a structure whose validation
//! fails is kept with its error, so that commands can report the witness.
//! Parse errors, duplicate names and unresolved references abort the load.

use std::collections::HashMap;
use std::path::Path;

use serde::Deserialize;
use squanta_core::aqm::{exp_end, AqmParts, FinAqm};
use squanta_core::equivlogic::{generator_image_map, hom_from_generator_image, inverse_iso_witness, TranslationPair};
use squanta_core::modact::{check_action, ActionMap, FinAct, FinModule, PosetAction};
use squanta_core::nucleus::{congruence_to_nucleus, consequence_to_nucleus, quotient, validate_presentation, AddConsequence, Nucleus, Presentation, QuantCongruence, QuotientModule};
use squanta_core::order::{FinPoset, MonoidDesc, Notation, Pomonoid, PosetDesc};
use squanta_core::quantale::FinQuantale;
use squanta_core::Error;

use crate::CliError;

/// The built-in fixture files, in load order.
pub const FIXTURES: [(&str, &str); 3] = [
    ("<fixtures/base.json>", include_str!("../fixtures/base.json")),
    ("<fixtures/modules.json>", include_str!("../fixtures/modules.json")),
    ("<fixtures/broken.json>", include_str!("../fixtures/broken.json")),
];

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Settings {
    pub fragment: Option<usize>,
    pub antichain: Option<usize>,
    pub workers: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    #[serde(default)]
    settings: Settings,
    structures: Vec<RawEntry>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum Table<T> {
    Keyword(String),
    Rows(Vec<T>),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAqm {
    quantale: Option<String>,
    monoid: Option<String>,
    product: Table<[String; 3]>,
    one: Option<String>,
    dist: Option<String>,
    iota: Option<Vec<[String; 2]>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAction {
    scalars: String,
    space: String,
    table: Table<[String; 3]>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSubmodule {
    module: String,
    generator: String,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawNucleus {
    space: String,
    table: Vec<[String; 2]>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConsequence {
    space: String,
    pairs: Vec<[String; 2]>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCongruence {
    space: String,
    blocks: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawQuotient {
    module: String,
    nucleus: String,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTranslation {
    p: String,
    q: String,
    gamma: Option<String>,
    delta: Option<String>,
    tau: Option<Vec<[String; 2]>>,
    rho: Option<Vec<[String; 2]>>,
    f: Option<Vec<[String; 2]>>,
    g: Option<Vec<[String; 2]>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawHom {
    from: String,
    generator: String,
    to: String,
    image: String,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    name: String,
    poset: Option<PosetDesc>,
    monoid: Option<MonoidDesc>,
    aqm: Option<RawAqm>,
    exp_end: Option<String>,
    action: Option<RawAction>,
    submodule: Option<RawSubmodule>,
    nucleus: Option<RawNucleus>,
    consequence: Option<RawConsequence>,
    congruence: Option<RawCongruence>,
    quotient: Option<RawQuotient>,
    translation: Option<RawTranslation>,
    generator_hom: Option<RawHom>,
}

impl RawEntry {
    fn kinds(&self) -> Vec<&'static str> {
        let mut k = Vec::new();
        if self.poset.is_some() {
            k.push("poset");
        } else if self.monoid.is_some() {
            k.push("monoid");
        }
        let rest = [
            ("aqm", self.aqm.is_some()),
            ("exp_end", self.exp_end.is_some()),
            ("action", self.action.is_some()),
            ("submodule", self.submodule.is_some()),
            ("nucleus", self.nucleus.is_some()),
            ("consequence", self.consequence.is_some()),
            ("congruence", self.congruence.is_some()),
            ("quotient", self.quotient.is_some()),
            ("translation", self.translation.is_some()),
            ("generator_hom", self.generator_hom.is_some()),
        ];
        k.extend(rest.iter().filter(|(_, on)| *on).map(|(n, _)| *n));
        k
    }

    fn refs(&self) -> Vec<&str> {
        let mut r: Vec<&str> = Vec::new();
        if let Some(a) = &self.aqm {
            r.extend(a.quantale.as_deref());
            r.extend(a.monoid.as_deref());
            r.extend(a.dist.as_deref());
        }
        r.extend(self.exp_end.as_deref());
        if let Some(a) = &self.action {
            r.extend([a.scalars.as_str(), a.space.as_str()]);
        }
        if let Some(s) = &self.submodule {
            r.push(&s.module);
        }
        r.extend(self.nucleus.as_ref().map(|n| n.space.as_str()));
        r.extend(self.consequence.as_ref().map(|n| n.space.as_str()));
        r.extend(self.congruence.as_ref().map(|n| n.space.as_str()));
        if let Some(q) = &self.quotient {
            r.extend([q.module.as_str(), q.nucleus.as_str()]);
        }
        if let Some(t) = &self.translation {
            r.extend([t.p.as_str(), t.q.as_str()]);
            r.extend(t.gamma.as_deref());
            r.extend(t.delta.as_deref());
        }
        if let Some(h) = &self.generator_hom {
            r.extend([h.from.as_str(), h.to.as_str()]);
        }
        r
    }
}

/// A translation pair given either by `(τ, ρ)` or by an isomorphism
/// `(f, g)` between the quotients, to be lifted.
#[derive(Debug, Clone)]
pub enum Translation {
    Pair(TranslationPair),
    Iso {
        p: QuotientModule,
        q: QuotientModule,
        f: Vec<usize>,
        g: Vec<usize>,
    },
}

#[derive(Debug, Clone)]
pub enum Value {
    Poset(FinPoset),
    Pomonoid(Pomonoid),
    Quantale(FinQuantale),
    Aqm(FinAqm),
    /// The free AQM over a pomonoid; built on demand at the requested
    /// fragment.
    FreeAqm(Pomonoid),
    PosetAction(PosetAction),
    Act(FinAct),
    Module(FinModule),
    Presentation(Presentation),
    Quotient(QuotientModule),
    Translation(Box<Translation>),
    Hom {
        from: FinModule,
        to: FinModule,
        map: Vec<usize>,
    },
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Poset(_) => "poset",
            Value::Pomonoid(_) => "pomonoid",
            Value::Quantale(_) => "quantale",
            Value::Aqm(_) => "aqm",
            Value::FreeAqm(_) => "free aqm",
            Value::PosetAction(_) => "poset action",
            Value::Act(_) => "act",
            Value::Module(_) => "module",
            Value::Presentation(p) => match p {
                Presentation::Nucleus(_) => "nucleus",
                Presentation::Consequence(_) => "consequence",
                Presentation::Congruence(_) => "congruence",
            },
            Value::Quotient(_) => "quotient",
            Value::Translation(_) => "translation",
            Value::Hom { .. } => "homomorphism",
        }
    }

    /// The quantale a presentation over this structure lives on.
    fn space(&self) -> Option<&FinQuantale> {
        match self {
            Value::Quantale(q) => Some(q),
            Value::Aqm(a) => Some(a.quant()),
            Value::Module(m) => Some(m.quantale()),
            Value::Quotient(q) => Some(q.module.quantale()),
            _ => None,
        }
    }

    pub fn module(&self) -> Option<&FinModule> {
        match self {
            Value::Module(m) => Some(m),
            Value::Quotient(q) => Some(&q.module),
            _ => None,
        }
    }
}

/// Why a structure failed validation; `cause` names the broken structure
/// it depends on, if the failure is inherited.
#[derive(Debug, Clone)]
pub struct Broken {
    pub error: Error,
    pub cause: Option<String>,
}

#[derive(Debug, Clone)]
pub struct Entry {
    pub name: String,
    pub file: String,
    pub line: usize,
    pub value: std::result::Result<Value, Broken>,
}

#[derive(Debug, Default)]
pub struct Workspace {
    pub entries: Vec<Entry>,
    pub settings: Settings,
    index: HashMap<String, usize>,
}

impl Workspace {
    pub fn get(&self, name: &str) -> Option<&Entry> {
        self.index.get(name).map(|&i| &self.entries[i])
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|e| e.name.as_str())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Loads the built-in fixtures (unless `fixtures` is false) followed by
/// the given files.
pub fn load_with_fixtures(paths: &[impl AsRef<Path>], fixtures: bool) -> Result<Workspace, CliError> {
    let mut sources = Vec::new();
    if fixtures {
        sources.extend(FIXTURES.iter().map(|(n, t)| (n.to_string(), t.to_string())));
    }
    for p in paths {
        let p = p.as_ref();
        let text = std::fs::read_to_string(p).map_err(|e| CliError::Io {
            file: p.display().to_string(),
            message: e.to_string(),
        })?;
        sources.push((p.display().to_string(), text));
    }
    load_sources(&sources)
}

/// Loads the given files only.
pub fn load(paths: &[impl AsRef<Path>]) -> Result<Workspace, CliError> {
    load_with_fixtures(paths, false)
}

/// Line of the entry named `name` in `text`, 1-based; falls back to the
/// first mention of the quoted name.
fn line_of(text: &str, name: &str) -> usize {
    let quoted = serde_json::to_string(name).unwrap_or_default();
    let hit = text
        .lines()
        .position(|l| l.contains("\"name\"") && l.contains(&quoted))
        .or_else(|| text.lines().position(|l| l.contains(&quoted)));
    hit.map_or(0, |i| i + 1)
}

/// Parses and validates `(file name, text)` sources as one workspace.
pub fn load_sources(sources: &[(String, String)]) -> Result<Workspace, CliError> {
    let mut raws: Vec<(RawEntry, String, usize)> = Vec::new();
    let mut settings = Settings::default();
    let mut seen: HashMap<String, String> = HashMap::new();
    for (file, text) in sources {
        let raw: RawFile = serde_json::from_str(text).map_err(|e| CliError::Parse {
            file: file.clone(),
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        let s = raw.settings;
        settings.fragment = s.fragment.or(settings.fragment);
        settings.antichain = s.antichain.or(settings.antichain);
        settings.workers = s.workers.or(settings.workers);
        for entry in raw.structures {
            let line = line_of(text, &entry.name);
            if let Some(first) = seen.get(&entry.name) {
                return Err(CliError::DuplicateName {
                    name: entry.name,
                    file: file.clone(),
                    line,
                    first: first.clone(),
                });
            }
            let kinds = entry.kinds();
            if kinds.len() != 1 {
                return Err(CliError::Parse {
                    file: file.clone(),
                    line,
                    column: 0,
                    message: format!("`{}` must describe exactly one structure, found {:?}", entry.name, kinds),
                });
            }
            seen.insert(entry.name.clone(), file.clone());
            raws.push((entry, file.clone(), line));
        }
    }
    let by_name: HashMap<String, usize> = raws.iter().enumerate().map(|(i, (r, _, _))| (r.name.clone(), i)).collect();
    let mut resolver = Resolver {
        raws: &raws,
        by_name: &by_name,
        done: vec![None; raws.len()],
        visiting: vec![false; raws.len()],
    };
    for i in 0..raws.len() {
        resolver.resolve(i)?;
    }
    let entries: Vec<Entry> = resolver
        .done
        .into_iter()
        .zip(&raws)
        .map(|(v, (r, file, line))| Entry {
            name: r.name.clone(),
            file: file.clone(),
            line: *line,
            value: v.expect("resolved"),
        })
        .collect();
    let index = entries.iter().enumerate().map(|(i, e)| (e.name.clone(), i)).collect();
    Ok(Workspace {
        entries,
        settings,
        index,
    })
}

type Resolved = std::result::Result<Value, Broken>;

struct Resolver<'a> {
    raws: &'a [(RawEntry, String, usize)],
    by_name: &'a HashMap<String, usize>,
    done: Vec<Option<Resolved>>,
    visiting: Vec<bool>,
}

impl Resolver<'_> {
    fn resolve(&mut self, i: usize) -> Result<(), CliError> {
        if self.done[i].is_some() {
            return Ok(());
        }
        let (raw, file, line) = &self.raws[i];
        self.visiting[i] = true;
        let mut deps = HashMap::new();
        for r in raw.refs() {
            let dangling = || CliError::DanglingReference {
                name: raw.name.clone(),
                reference: r.to_string(),
                file: file.clone(),
                line: *line,
            };
            let &j = self.by_name.get(r).ok_or_else(dangling)?;
            if self.visiting[j] {
                return Err(dangling());
            }
            self.resolve(j)?;
            match self.done[j].as_ref().expect("resolved") {
                Ok(v) => {
                    deps.insert(r.to_string(), v.clone());
                }
                Err(b) => {
                    self.visiting[i] = false;
                    self.done[i] = Some(Err(Broken {
                        error: b.error.clone(),
                        cause: Some(b.cause.clone().unwrap_or_else(|| r.to_string())),
                    }));
                    return Ok(());
                }
            }
        }
        self.visiting[i] = false;
        self.done[i] = Some(build(raw, &deps).map_err(|error| Broken { error, cause: None }));
        Ok(())
    }
}

fn wrong_kind(name: &str, want: &str, got: &Value) -> Error {
    Error::Malformed(format!("`{name}` is a {}, expected {want}", got.kind()))
}

fn pairs(rows: &[[String; 2]]) -> Vec<(&str, &str)> {
    rows.iter().map(|[a, b]| (a.as_str(), b.as_str())).collect()
}

fn triples(rows: &[[String; 3]]) -> Vec<(&str, &str, &str)> {
    rows.iter().map(|[a, b, c]| (a.as_str(), b.as_str(), c.as_str())).collect()
}

/// A total map given as `[x, y]` rows, by element names.
fn name_map(rows: &[[String; 2]], dom: impl Fn(&str) -> squanta_core::Result<usize>, cod: impl Fn(&str) -> squanta_core::Result<usize>, n: usize) -> squanta_core::Result<Vec<usize>> {
    let mut out = vec![None; n];
    for [x, y] in rows {
        let (i, j) = (dom(x)?, cod(y)?);
        if out[i].replace(j).is_some_and(|old| old != j) {
            return Err(Error::Malformed(format!("map defined twice at {x}")));
        }
    }
    out.into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| Error::Malformed(format!("map undefined at entry {i}"))))
        .collect()
}

pub fn as_nucleus(p: &Presentation) -> Nucleus {
    match p {
        Presentation::Nucleus(g) => g.clone(),
        Presentation::Consequence(c) => consequence_to_nucleus(c),
        Presentation::Congruence(t) => congruence_to_nucleus(t),
    }
}

fn product_table(q: &FinQuantale, rows: &[[String; 3]]) -> squanta_core::Result<Vec<usize>> {
    let n = q.len();
    let mut out = vec![None; n * n];
    for [x, y, z] in rows {
        let (i, k) = (q.index(x)? * n + q.index(y)?, q.index(z)?);
        if out[i].replace(k).is_some_and(|old| old != k) {
            return Err(Error::Malformed(format!("product defined twice at ({x}, {y})")));
        }
    }
    out.into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| Error::Malformed(format!("product undefined at ({}, {})", q.name(i / n), q.name(i % n)))))
        .collect()
}

fn build(raw: &RawEntry, deps: &HashMap<String, Value>) -> squanta_core::Result<Value> {
    let dep = |n: &str| deps.get(n).expect("dependency resolved");
    let quantale_of = |n: &str| -> squanta_core::Result<FinQuantale> {
        dep(n).space().cloned().ok_or_else(|| wrong_kind(n, "a quantale", dep(n)))
    };
    let module_of = |n: &str| -> squanta_core::Result<FinModule> {
        dep(n).module().cloned().ok_or_else(|| wrong_kind(n, "a module", dep(n)))
    };
    let nucleus_of = |n: &str| -> squanta_core::Result<Nucleus> {
        match dep(n) {
            Value::Presentation(p) => Ok(as_nucleus(p)),
            v => Err(wrong_kind(n, "a nucleus, consequence or congruence", v)),
        }
    };
    if let Some(p) = &raw.poset {
        let poset = p.validate()?;
        return match &raw.monoid {
            None => Ok(Value::Poset(poset)),
            Some(m) => {
                let pm = m.validate(poset)?;
                if pm.notation() == Notation::Additive {
                    Ok(Value::Quantale(FinQuantale::new(pm)?))
                } else {
                    Ok(Value::Pomonoid(pm))
                }
            }
        };
    }
    if raw.monoid.is_some() {
        return Err(Error::Malformed("a monoid needs a poset".into()));
    }
    if let Some(a) = &raw.aqm {
        if let Table::Keyword(k) = &a.product {
            if k != "free" {
                return Err(Error::Malformed(format!("unknown product keyword `{k}`")));
            }
            let m = a.monoid.as_deref().ok_or_else(|| Error::Malformed("free AQM needs `monoid`".into()))?;
            return match dep(m) {
                Value::Pomonoid(p) => Ok(Value::FreeAqm(p.clone())),
                v => Err(wrong_kind(m, "a pomonoid", v)),
            };
        }
        let Table::Rows(rows) = &a.product else { unreachable!() };
        let qn = a.quantale.as_deref().ok_or_else(|| Error::Malformed("AQM needs `quantale`".into()))?;
        let quant = match dep(qn) {
            Value::Quantale(q) => q.clone(),
            v => return Err(wrong_kind(qn, "a quantale", v)),
        };
        let mul = product_table(&quant, rows)?;
        let one = quant.index(a.one.as_deref().ok_or_else(|| Error::Malformed("AQM needs `one`".into()))?)?;
        let parts = match (&a.dist, &a.iota) {
            (None, None) => AqmParts::full(quant, mul, one),
            (Some(d), Some(iota)) => {
                let dist = match dep(d) {
                    Value::Pomonoid(p) => p.clone(),
                    v => return Err(wrong_kind(d, "a pomonoid", v)),
                };
                let iota = name_map(iota, |x| dist.poset().index(x), |y| quant.index(y), dist.len())?;
                AqmParts::with_dist(quant, mul, one, &dist, iota)
            }
            _ => return Err(Error::Malformed("`dist` and `iota` go together".into())),
        };
        return Ok(Value::Aqm(FinAqm::new(parts)?));
    }
    if let Some(q) = &raw.exp_end {
        let space = match dep(q) {
            Value::Quantale(q) => q.clone(),
            v => return Err(wrong_kind(q, "a quantale", v)),
        };
        let ee = exp_end(&space)?;
        let n = space.len();
        let table = (0..ee.aqm.len() * n).map(|i| ee.maps[i / n][i % n]).collect();
        return Ok(Value::Module(FinModule::new(ee.aqm, space, table)?));
    }
    if let Some(a) = &raw.action {
        let am = match (dep(&a.scalars), dep(&a.space), &a.table) {
            (Value::Aqm(s), Value::Quantale(q), Table::Keyword(k)) if k == "self" => {
                if s.quant() != q {
                    return Err(Error::BaseMismatch);
                }
                ActionMap::Module(FinModule::self_module(s))
            }
            (_, _, Table::Keyword(k)) => return Err(Error::Malformed(format!("unknown table keyword `{k}`"))),
            (Value::Pomonoid(m), Value::Poset(p), Table::Rows(rows)) => {
                ActionMap::Poset(PosetAction::from_triples(m.clone(), p.clone(), &triples(rows))?)
            }
            (Value::Pomonoid(m), Value::Quantale(q), Table::Rows(rows)) => {
                ActionMap::Act(FinAct::from_triples(m.clone(), q.clone(), &triples(rows))?)
            }
            (Value::Aqm(s), Value::Quantale(q), Table::Rows(rows)) => {
                ActionMap::Module(FinModule::from_triples(s.clone(), q.clone(), &triples(rows))?)
            }
            (s, p, _) => {
                return Err(Error::Malformed(format!(
                    "no action of a {} on a {}",
                    s.kind(),
                    p.kind()
                )))
            }
        };
        check_action(&am)?.into_result()?;
        return Ok(match am {
            ActionMap::Poset(p) => Value::PosetAction(p),
            ActionMap::Act(a) => Value::Act(a),
            ActionMap::Module(m) => Value::Module(m),
        });
    }
    if let Some(s) = &raw.submodule {
        let m = module_of(&s.module)?;
        let u = m.quantale().index(&s.generator)?;
        return Ok(Value::Module(m.cyclic_submodule(u)?.0));
    }
    let presentation = if let Some(n) = &raw.nucleus {
        Some(Presentation::Nucleus(Nucleus::from_pairs(&quantale_of(&n.space)?, &pairs(&n.table))?))
    } else if let Some(c) = &raw.consequence {
        Some(Presentation::Consequence(AddConsequence::from_pairs(&quantale_of(&c.space)?, &pairs(&c.pairs))?))
    } else if let Some(t) = &raw.congruence {
        Some(Presentation::Congruence(QuantCongruence::from_blocks(&quantale_of(&t.space)?, &t.blocks)?))
    } else {
        None
    };
    if let Some(p) = presentation {
        validate_presentation(&p).into_result()?;
        return Ok(Value::Presentation(p));
    }
    if let Some(q) = &raw.quotient {
        return Ok(Value::Quotient(quotient(&module_of(&q.module)?, &nucleus_of(&q.nucleus)?)?));
    }
    if let Some(t) = &raw.translation {
        let side = |m: &str, g: &Option<String>| -> squanta_core::Result<QuotientModule> {
            let m = module_of(m)?;
            let g = match g {
                Some(g) => nucleus_of(g)?,
                None => Nucleus::identity(m.quantale()),
            };
            quotient(&m, &g)
        };
        let (p, q) = (side(&t.p, &t.gamma)?, side(&t.q, &t.delta)?);
        let tr = match (&t.tau, &t.rho, &t.f, &t.g) {
            (Some(tau), Some(rho), None, None) => {
                let (pm, qm) = (&p.parent, &q.parent);
                let tau = name_map(tau, |x| pm.quantale().index(x), |y| qm.quantale().index(y), pm.len())?;
                let rho = name_map(rho, |x| qm.quantale().index(x), |y| pm.quantale().index(y), qm.len())?;
                Translation::Pair(TranslationPair::from_quotients(p, q, tau, rho)?)
            }
            (None, None, Some(f), Some(g)) => {
                let fixed = |qm: &QuotientModule, x: &str| -> squanta_core::Result<usize> {
                    let i = qm.parent.quantale().index(x)?;
                    qm.carrier
                        .binary_search(&i)
                        .map_err(|_| Error::Malformed(format!("{x} is not a fixed point")))
                };
                let f = name_map(f, |x| fixed(&p, x), |y| fixed(&q, y), p.carrier.len())?;
                let g = name_map(g, |x| fixed(&q, x), |y| fixed(&p, y), q.carrier.len())?;
                if let Some(w) = inverse_iso_witness(&p, &q, &f, &g) {
                    return Err(Error::NotAHomomorphism(w));
                }
                Translation::Iso { p, q, f, g }
            }
            _ => return Err(Error::Malformed("a translation needs either `tau` and `rho` or `f` and `g`".into())),
        };
        return Ok(Value::Translation(Box::new(tr)));
    }
    if let Some(h) = &raw.generator_hom {
        let (from, to) = (module_of(&h.from)?, module_of(&h.to)?);
        let u = from.quantale().index(&h.generator)?;
        let w = to.quantale().index(&h.image)?;
        generator_image_map(&from, u, &to, w)?;
        let map = hom_from_generator_image(&from, u, &to, w)?;
        return Ok(Value::Hom { from, to, map });
    }
    unreachable!("entry kinds checked at parse time")
}
