//! The structure-description language: a small declaration format for
//! groups, spaces, actions and maps, with a parser that reports positioned
//! diagnostics and a canonical serializer.
//!
//! Grammar (tokens are whitespace-separated; `{`, `}` and `;` delimit
//! themselves; `#` starts a line comment):
//!
//! ```text
//! group G { elements: n1 n2 .. ; table: row+ ; [opens: SET+ | subbasis: SET+ | discrete] }
//! space X { points: p1 .. ; opens: SET+ | subbasis: SET+ | discrete | indiscrete }
//! action A : G on X { (t x -> y)+ }
//! map f : X -> Y { (x -> y)+ }
//! SET := "{" name* "}"
//! ```
//!
//! Row `k` of a group table lists the products `k·1, k·2, ..` by element
//! name. A group without a topology clause is discrete. Every `(t,x)` pair
//! of an action and every domain point of a map must appear exactly once.
//!
//! Parsed documents are canonical: items sorted by kind then name, pairs
//! sorted by index, sets sorted; `parse ∘ serialize` is the identity on
//! documents.

use crate::action::{validate_action, GenAction};
use crate::algebra::{CayleyTable, GenGroup};
use crate::sets::{bit, members, Mask};
use crate::tgg::{validate_tgg, TopGenGroup};
use crate::topology::{FiniteSpace, SpaceMap, TopologySpec};
use std::collections::BTreeMap;
use std::fmt;

// ---------------------------------------------------------------------------
// Document model
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TopoDecl {
    Opens(Vec<Vec<String>>),
    Subbasis(Vec<Vec<String>>),
    Discrete,
    Indiscrete,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupDecl {
    pub name: String,
    pub elements: Vec<String>,
    /// Row-major products by name.
    pub table: Vec<Vec<String>>,
    pub topology: TopoDecl,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpaceDecl {
    pub name: String,
    pub points: Vec<String>,
    pub topology: TopoDecl,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionDecl {
    pub name: String,
    pub group: String,
    pub space: String,
    /// `(t, x, y)` triples, sorted by `(t, x)` index.
    pub pairs: Vec<(String, String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapDecl {
    pub name: String,
    pub dom: String,
    pub cod: String,
    /// `(x, y)` pairs, sorted by `x` index.
    pub pairs: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Item {
    Group(GroupDecl),
    Space(SpaceDecl),
    Action(ActionDecl),
    Map(MapDecl),
}

impl Item {
    fn kind_rank(&self) -> u8 {
        match self {
            Item::Group(_) => 0,
            Item::Space(_) => 1,
            Item::Action(_) => 2,
            Item::Map(_) => 3,
        }
    }

    pub fn name(&self) -> &str {
        match self {
            Item::Group(g) => &g.name,
            Item::Space(s) => &s.name,
            Item::Action(a) => &a.name,
            Item::Map(m) => &m.name,
        }
    }
}

/// An ordered, canonical list of declarations.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Document {
    pub items: Vec<Item>,
}

// ---------------------------------------------------------------------------
// Diagnostics
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: usize,
    pub col: usize,
    pub token: String,
    pub message: String,
    pub remediation: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}: {} (at `{}`); {}",
            self.line, self.col, self.message, self.token, self.remediation
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Token {
    text: String,
    line: usize,
    col: usize,
}

fn tokenize(text: &str) -> Vec<Token> {
    let mut tokens = Vec::new();
    for (li, raw_line) in text.lines().enumerate() {
        let line = li + 1;
        let content = match raw_line.find('#') {
            Some(i) => &raw_line[..i],
            None => raw_line,
        };
        let mut current = String::new();
        let mut start_col = 0;
        for (ci, ch) in content.chars().enumerate() {
            let col = ci + 1;
            if ch.is_whitespace() || ch == '{' || ch == '}' || ch == ';' {
                if !current.is_empty() {
                    tokens.push(Token { text: std::mem::take(&mut current), line, col: start_col });
                }
                if !ch.is_whitespace() {
                    tokens.push(Token { text: ch.to_string(), line, col });
                }
            } else {
                if current.is_empty() {
                    start_col = col;
                }
                current.push(ch);
            }
        }
        if !current.is_empty() {
            tokens.push(Token { text: current, line, col: start_col });
        }
    }
    tokens
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn eof_diag(&self, expected: &str) -> Diagnostic {
        let (line, col) = self
            .tokens
            .last()
            .map(|t| (t.line, t.col + t.text.len()))
            .unwrap_or((1, 1));
        Diagnostic {
            line,
            col,
            token: "<end of input>".into(),
            message: format!("expected {expected}, found end of input"),
            remediation: format!("add {expected}"),
        }
    }

    fn expect(&mut self, text: &str) -> Result<Token, Diagnostic> {
        match self.next() {
            Some(t) if t.text == text => Ok(t),
            Some(t) => Err(Diagnostic {
                line: t.line,
                col: t.col,
                token: t.text.clone(),
                message: format!("expected `{text}`"),
                remediation: format!("write `{text}` here"),
            }),
            None => Err(self.eof_diag(&format!("`{text}`"))),
        }
    }

    fn name(&mut self, what: &str) -> Result<Token, Diagnostic> {
        match self.next() {
            Some(t) if is_valid_name(&t.text) => Ok(t),
            Some(t) => Err(Diagnostic {
                line: t.line,
                col: t.col,
                token: t.text.clone(),
                message: format!("expected {what}"),
                remediation: "names may not be `{`, `}`, `;`, `:`, `->` or end with `:`".into(),
            }),
            None => Err(self.eof_diag(what)),
        }
    }

    /// Names up to (not including) `;`; consumes the `;`.
    fn names_until_semicolon(&mut self, what: &str) -> Result<Vec<Token>, Diagnostic> {
        let mut out = Vec::new();
        loop {
            match self.peek() {
                Some(t) if t.text == ";" => {
                    self.next();
                    return Ok(out);
                }
                Some(_) => out.push(self.name(what)?),
                None => return Err(self.eof_diag("`;`")),
            }
        }
    }

    /// `{ name* }` sets while the next token is `{`.
    fn sets(&mut self) -> Result<Vec<Vec<Token>>, Diagnostic> {
        let mut sets = Vec::new();
        while self.peek().map(|t| t.text.as_str()) == Some("{") {
            self.next();
            let mut set = Vec::new();
            loop {
                match self.peek() {
                    Some(t) if t.text == "}" => {
                        self.next();
                        break;
                    }
                    Some(_) => set.push(self.name("a point name")?),
                    None => return Err(self.eof_diag("`}`")),
                }
            }
            sets.push(set);
        }
        Ok(sets)
    }
}

fn is_valid_name(s: &str) -> bool {
    !s.is_empty()
        && s != "{"
        && s != "}"
        && s != ";"
        && s != ":"
        && s != "->"
        && !s.ends_with(':')
}

fn diag(tok: &Token, message: String, remediation: &str) -> Diagnostic {
    Diagnostic {
        line: tok.line,
        col: tok.col,
        token: tok.text.clone(),
        message,
        remediation: remediation.to_string(),
    }
}

// Raw (unvalidated) declarations keep token positions for the semantic pass.
struct RawGroup {
    name: Token,
    elements: Vec<Token>,
    table: Vec<Token>,
    topology: RawTopo,
}

enum RawTopo {
    Opens(Vec<Vec<Token>>),
    Subbasis(Vec<Vec<Token>>),
    Discrete,
    Indiscrete,
}

struct RawSpace {
    name: Token,
    points: Vec<Token>,
    topology: RawTopo,
}

struct RawAction {
    name: Token,
    group: Token,
    space: Token,
    pairs: Vec<(Token, Token, Token)>,
}

struct RawMap {
    name: Token,
    dom: Token,
    cod: Token,
    pairs: Vec<(Token, Token)>,
}

enum RawItem {
    Group(RawGroup),
    Space(RawSpace),
    Action(RawAction),
    Map(RawMap),
}

fn parse_raw(p: &mut Parser) -> Result<Vec<RawItem>, Diagnostic> {
    let mut items = Vec::new();
    while let Some(head) = p.next() {
        match head.text.as_str() {
            "group" => {
                let name = p.name("a group name")?;
                p.expect("{")?;
                p.expect("elements:")?;
                let elements = p.names_until_semicolon("an element name")?;
                p.expect("table:")?;
                let table = p.names_until_semicolon("an element name")?;
                let topology = match p.peek().map(|t| t.text.clone()).as_deref() {
                    Some("opens:") => {
                        p.next();
                        RawTopo::Opens(p.sets()?)
                    }
                    Some("subbasis:") => {
                        p.next();
                        RawTopo::Subbasis(p.sets()?)
                    }
                    Some("discrete") => {
                        p.next();
                        RawTopo::Discrete
                    }
                    _ => RawTopo::Discrete,
                };
                p.expect("}")?;
                items.push(RawItem::Group(RawGroup { name, elements, table, topology }));
            }
            "space" => {
                let name = p.name("a space name")?;
                p.expect("{")?;
                p.expect("points:")?;
                let points = p.names_until_semicolon("a point name")?;
                let topology = match p.next() {
                    Some(t) if t.text == "opens:" => RawTopo::Opens(p.sets()?),
                    Some(t) if t.text == "subbasis:" => RawTopo::Subbasis(p.sets()?),
                    Some(t) if t.text == "discrete" => RawTopo::Discrete,
                    Some(t) if t.text == "indiscrete" => RawTopo::Indiscrete,
                    Some(t) => {
                        return Err(diag(
                            &t,
                            "expected a topology clause".into(),
                            "use one of `opens:`, `subbasis:`, `discrete`, `indiscrete`",
                        ))
                    }
                    None => return Err(p.eof_diag("a topology clause")),
                };
                p.expect("}")?;
                items.push(RawItem::Space(RawSpace { name, points, topology }));
            }
            "action" => {
                let name = p.name("an action name")?;
                p.expect(":")?;
                let group = p.name("a group name")?;
                p.expect("on")?;
                let space = p.name("a space name")?;
                p.expect("{")?;
                let mut pairs = Vec::new();
                loop {
                    match p.peek() {
                        Some(t) if t.text == "}" => {
                            p.next();
                            break;
                        }
                        Some(_) => {
                            let t = p.name("a group element")?;
                            let x = p.name("a point")?;
                            p.expect("->")?;
                            let y = p.name("a point")?;
                            pairs.push((t, x, y));
                        }
                        None => return Err(p.eof_diag("`}`")),
                    }
                }
                items.push(RawItem::Action(RawAction { name, group, space, pairs }));
            }
            "map" => {
                let name = p.name("a map name")?;
                p.expect(":")?;
                let dom = p.name("a space name")?;
                p.expect("->")?;
                let cod = p.name("a space name")?;
                p.expect("{")?;
                let mut pairs = Vec::new();
                loop {
                    match p.peek() {
                        Some(t) if t.text == "}" => {
                            p.next();
                            break;
                        }
                        Some(_) => {
                            let x = p.name("a point")?;
                            p.expect("->")?;
                            let y = p.name("a point")?;
                            pairs.push((x, y));
                        }
                        None => return Err(p.eof_diag("`}`")),
                    }
                }
                items.push(RawItem::Map(RawMap { name, dom, cod, pairs }));
            }
            _ => {
                return Err(diag(
                    &head,
                    "expected a declaration".into(),
                    "start with `group`, `space`, `action` or `map`",
                ))
            }
        }
    }
    Ok(items)
}

// ---------------------------------------------------------------------------
// Semantic pass
// ---------------------------------------------------------------------------

struct CarrierInfo {
    names: Vec<String>,
}

impl CarrierInfo {
    fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

fn check_carrier(
    kind: &str,
    tokens: &[Token],
    header: &Token,
    diags: &mut Vec<Diagnostic>,
) -> CarrierInfo {
    if tokens.is_empty() {
        diags.push(diag(
            header,
            format!("a {kind} needs at least one member"),
            "list at least one name",
        ));
    }
    let mut names = Vec::new();
    for t in tokens {
        if names.contains(&t.text) {
            diags.push(diag(t, format!("duplicate name `{}`", t.text), "names must be distinct"));
        } else {
            names.push(t.text.clone());
        }
    }
    CarrierInfo { names }
}

fn check_sets(
    sets: &[Vec<Token>],
    carrier: &CarrierInfo,
    diags: &mut Vec<Diagnostic>,
) -> Vec<Mask> {
    let mut masks = Vec::new();
    for set in sets {
        let mut mask: Mask = 0;
        for t in set {
            match carrier.index_of(&t.text) {
                Some(i) => mask |= bit(i),
                None => diags.push(diag(
                    t,
                    format!("unknown name `{}` in set", t.text),
                    "sets may only mention declared points",
                )),
            }
        }
        masks.push(mask);
    }
    masks
}

fn canonical_sets(masks: &[Mask], carrier: &CarrierInfo) -> Vec<Vec<String>> {
    let mut sorted = masks.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    sorted
        .into_iter()
        .map(|m| members(m).map(|i| carrier.names[i].clone()).collect())
        .collect()
}

fn resolve_topology(
    raw: &RawTopo,
    carrier: &CarrierInfo,
    header: &Token,
    diags: &mut Vec<Diagnostic>,
) -> TopoDecl {
    match raw {
        RawTopo::Discrete => TopoDecl::Discrete,
        RawTopo::Indiscrete => TopoDecl::Indiscrete,
        RawTopo::Subbasis(sets) => {
            let masks = check_sets(sets, carrier, diags);
            TopoDecl::Subbasis(canonical_sets(&masks, carrier))
        }
        RawTopo::Opens(sets) => {
            let masks = check_sets(sets, carrier, diags);
            // explicit families must already be topologies
            if let Err(e) = FiniteSpace::from_opens(carrier.names.clone(), &masks) {
                diags.push(diag(
                    header,
                    format!("not a topology: {e}"),
                    "explicit opens must contain the empty and full sets and be closed under union and intersection; use `subbasis:` to generate the closure",
                ));
            }
            TopoDecl::Opens(canonical_sets(&masks, carrier))
        }
    }
}

/// Parse text into a canonical document, or a deterministic diagnostic
/// list. All structural properties are checked here: unique names,
/// resolvable references, square tables, total and duplicate-free pair
/// lists, and explicit open families that really are topologies.
pub fn parse_document(text: &str) -> Result<Document, Vec<Diagnostic>> {
    let mut parser = Parser { tokens: tokenize(text), pos: 0 };
    let raw = match parse_raw(&mut parser) {
        Ok(items) => items,
        Err(d) => return Err(vec![d]),
    };
    let mut diags: Vec<Diagnostic> = Vec::new();

    // declared names per kind, in source order
    let mut group_carriers: BTreeMap<String, CarrierInfo> = BTreeMap::new();
    let mut space_carriers: BTreeMap<String, CarrierInfo> = BTreeMap::new();
    for item in &raw {
        let (kind, name) = match item {
            RawItem::Group(g) => ("group", &g.name),
            RawItem::Space(s) => ("space", &s.name),
            RawItem::Action(a) => ("action", &a.name),
            RawItem::Map(m) => ("map", &m.name),
        };
        let dup = match item {
            RawItem::Group(_) => group_carriers.contains_key(&name.text),
            RawItem::Space(_) => space_carriers.contains_key(&name.text),
            RawItem::Action(_) | RawItem::Map(_) => false, // checked below
        };
        if dup {
            diags.push(diag(
                name,
                format!("duplicate {kind} declaration `{}`", name.text),
                "names must be unique per kind",
            ));
        }
        match item {
            RawItem::Group(g) => {
                let carrier = check_carrier("group", &g.elements, &g.name, &mut diags);
                group_carriers.entry(g.name.text.clone()).or_insert(carrier);
            }
            RawItem::Space(s) => {
                let carrier = check_carrier("space", &s.points, &s.name, &mut diags);
                space_carriers.entry(s.name.text.clone()).or_insert(carrier);
            }
            _ => {}
        }
    }

    let mut seen_actions: Vec<String> = Vec::new();
    let mut seen_maps: Vec<String> = Vec::new();
    let mut items: Vec<Item> = Vec::new();

    for item in &raw {
        match item {
            RawItem::Group(g) => {
                let carrier = &group_carriers[&g.name.text];
                let n = carrier.names.len();
                if g.table.len() != n * n {
                    diags.push(diag(
                        &g.name,
                        format!(
                            "table for `{}` has {} entries, expected {}×{} = {}",
                            g.name.text,
                            g.table.len(),
                            n,
                            n,
                            n * n
                        ),
                        "list every product row by row",
                    ));
                    continue;
                }
                let mut rows = Vec::with_capacity(n);
                let mut ok = true;
                for r in 0..n {
                    let mut row = Vec::with_capacity(n);
                    for c in 0..n {
                        let t = &g.table[r * n + c];
                        match carrier.index_of(&t.text) {
                            Some(_) => row.push(t.text.clone()),
                            None => {
                                diags.push(diag(
                                    t,
                                    format!("unknown element `{}` in table", t.text),
                                    "table entries must be declared elements",
                                ));
                                ok = false;
                            }
                        }
                    }
                    rows.push(row);
                }
                let topology = resolve_topology(&g.topology, carrier, &g.name, &mut diags);
                if ok {
                    items.push(Item::Group(GroupDecl {
                        name: g.name.text.clone(),
                        elements: carrier.names.clone(),
                        table: rows,
                        topology,
                    }));
                }
            }
            RawItem::Space(s) => {
                let carrier = &space_carriers[&s.name.text];
                let topology = resolve_topology(&s.topology, carrier, &s.name, &mut diags);
                items.push(Item::Space(SpaceDecl {
                    name: s.name.text.clone(),
                    points: carrier.names.clone(),
                    topology,
                }));
            }
            RawItem::Action(a) => {
                if seen_actions.contains(&a.name.text) {
                    diags.push(diag(
                        &a.name,
                        format!("duplicate action declaration `{}`", a.name.text),
                        "names must be unique per kind",
                    ));
                    continue;
                }
                seen_actions.push(a.name.text.clone());
                let Some(gc) = group_carriers.get(&a.group.text) else {
                    diags.push(diag(
                        &a.group,
                        format!("unknown group `{}`", a.group.text),
                        "declare the group before using it",
                    ));
                    continue;
                };
                let Some(xc) = space_carriers.get(&a.space.text) else {
                    diags.push(diag(
                        &a.space,
                        format!("unknown space `{}`", a.space.text),
                        "declare the space before using it",
                    ));
                    continue;
                };
                let mut filled: Vec<Option<(usize, usize, String)>> = Vec::new();
                let mut ok = true;
                for (t, x, y) in &a.pairs {
                    let (Some(ti), Some(xi), Some(_)) = (
                        gc.index_of(&t.text),
                        xc.index_of(&x.text),
                        xc.index_of(&y.text),
                    ) else {
                        let bad = [t, x, y]
                            .into_iter()
                            .find(|tok| {
                                gc.index_of(&tok.text).is_none()
                                    && xc.index_of(&tok.text).is_none()
                            })
                            .unwrap_or(t);
                        diags.push(diag(
                            bad,
                            format!("unknown name `{}` in action pair", bad.text),
                            "use declared group elements and space points",
                        ));
                        ok = false;
                        continue;
                    };
                    if filled.iter().flatten().any(|(pt, px, _)| (*pt, *px) == (ti, xi)) {
                        diags.push(diag(
                            t,
                            format!("duplicate pair ({}, {})", t.text, x.text),
                            "each (t, x) pair must appear exactly once",
                        ));
                        ok = false;
                    } else {
                        filled.push(Some((ti, xi, y.text.clone())));
                    }
                }
                if ok {
                    for ti in 0..gc.names.len() {
                        for xi in 0..xc.names.len() {
                            if !filled.iter().flatten().any(|(pt, px, _)| (*pt, *px) == (ti, xi))
                            {
                                diags.push(diag(
                                    &a.name,
                                    format!(
                                        "missing pair ({}, {})",
                                        gc.names[ti], xc.names[xi]
                                    ),
                                    "each (t, x) pair must appear exactly once",
                                ));
                                ok = false;
                            }
                        }
                    }
                }
                if ok {
                    let mut pairs: Vec<(usize, usize, String)> =
                        filled.into_iter().flatten().collect();
                    pairs.sort_by_key(|(t, x, _)| (*t, *x));
                    items.push(Item::Action(ActionDecl {
                        name: a.name.text.clone(),
                        group: a.group.text.clone(),
                        space: a.space.text.clone(),
                        pairs: pairs
                            .into_iter()
                            .map(|(t, x, y)| {
                                (gc.names[t].clone(), xc.names[x].clone(), y)
                            })
                            .collect(),
                    }));
                }
            }
            RawItem::Map(m) => {
                if seen_maps.contains(&m.name.text) {
                    diags.push(diag(
                        &m.name,
                        format!("duplicate map declaration `{}`", m.name.text),
                        "names must be unique per kind",
                    ));
                    continue;
                }
                seen_maps.push(m.name.text.clone());
                let Some(dc) = space_carriers.get(&m.dom.text) else {
                    diags.push(diag(
                        &m.dom,
                        format!("unknown space `{}`", m.dom.text),
                        "declare the space before using it",
                    ));
                    continue;
                };
                let Some(cc) = space_carriers.get(&m.cod.text) else {
                    diags.push(diag(
                        &m.cod,
                        format!("unknown space `{}`", m.cod.text),
                        "declare the space before using it",
                    ));
                    continue;
                };
                let mut ok = true;
                let mut filled: Vec<Option<String>> = vec![None; dc.names.len()];
                for (x, y) in &m.pairs {
                    let Some(xi) = dc.index_of(&x.text) else {
                        diags.push(diag(
                            x,
                            format!("unknown point `{}`", x.text),
                            "use declared points of the domain",
                        ));
                        ok = false;
                        continue;
                    };
                    if cc.index_of(&y.text).is_none() {
                        diags.push(diag(
                            y,
                            format!("unknown point `{}`", y.text),
                            "use declared points of the codomain",
                        ));
                        ok = false;
                        continue;
                    }
                    if filled[xi].is_some() {
                        diags.push(diag(
                            x,
                            format!("duplicate pair for `{}`", x.text),
                            "each domain point must appear exactly once",
                        ));
                        ok = false;
                    } else {
                        filled[xi] = Some(y.text.clone());
                    }
                }
                if ok {
                    for (xi, slot) in filled.iter().enumerate() {
                        if slot.is_none() {
                            diags.push(diag(
                                &m.name,
                                format!("missing pair for `{}`", dc.names[xi]),
                                "each domain point must appear exactly once",
                            ));
                            ok = false;
                        }
                    }
                }
                if ok {
                    let pairs = filled
                        .into_iter()
                        .enumerate()
                        .map(|(xi, y)| (dc.names[xi].clone(), y.expect("filled")))
                        .collect();
                    items.push(Item::Map(MapDecl {
                        name: m.name.text.clone(),
                        dom: m.dom.text.clone(),
                        cod: m.cod.text.clone(),
                        pairs,
                    }));
                }
            }
        }
    }

    if !diags.is_empty() {
        return Err(diags);
    }
    items.sort_by(|a, b| (a.kind_rank(), a.name()).cmp(&(b.kind_rank(), b.name())));
    Ok(Document { items })
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

fn write_set(out: &mut String, set: &[String]) {
    out.push('{');
    out.push_str(&set.join(" "));
    out.push('}');
}

fn write_topology(out: &mut String, topo: &TopoDecl, indent: &str) {
    match topo {
        TopoDecl::Discrete => out.push_str(&format!("{indent}discrete\n")),
        TopoDecl::Indiscrete => out.push_str(&format!("{indent}indiscrete\n")),
        TopoDecl::Opens(sets) => {
            out.push_str(&format!("{indent}opens:"));
            for s in sets {
                out.push(' ');
                write_set(out, s);
            }
            out.push('\n');
        }
        TopoDecl::Subbasis(sets) => {
            out.push_str(&format!("{indent}subbasis:"));
            for s in sets {
                out.push(' ');
                write_set(out, s);
            }
            out.push('\n');
        }
    }
}

/// Canonical text for a document; `parse(serialize(parse(text))) =
/// parse(text)` and an empty document serializes to empty text.
pub fn serialize_document(doc: &Document) -> String {
    let mut out = String::new();
    for (i, item) in doc.items.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        match item {
            Item::Group(g) => {
                out.push_str(&format!("group {} {{\n", g.name));
                out.push_str(&format!("  elements: {} ;\n", g.elements.join(" ")));
                out.push_str("  table:\n");
                for row in &g.table {
                    out.push_str(&format!("    {}\n", row.join(" ")));
                }
                out.push_str("  ;\n");
                write_topology(&mut out, &g.topology, "  ");
                out.push_str("}\n");
            }
            Item::Space(s) => {
                out.push_str(&format!("space {} {{\n", s.name));
                out.push_str(&format!("  points: {} ;\n", s.points.join(" ")));
                write_topology(&mut out, &s.topology, "  ");
                out.push_str("}\n");
            }
            Item::Action(a) => {
                out.push_str(&format!("action {} : {} on {} {{\n", a.name, a.group, a.space));
                for (t, x, y) in &a.pairs {
                    out.push_str(&format!("  {t} {x} -> {y}\n"));
                }
                out.push_str("}\n");
            }
            Item::Map(m) => {
                out.push_str(&format!("map {} : {} -> {} {{\n", m.name, m.dom, m.cod));
                for (x, y) in &m.pairs {
                    out.push_str(&format!("  {x} -> {y}\n"));
                }
                out.push_str("}\n");
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Elaboration into semantic objects
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Issue {
    pub kind: String,
    pub name: String,
    pub message: String,
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} `{}`: {}", self.kind, self.name, self.message)
    }
}

/// Every mathematically valid structure from a document, plus the issues
/// for the ones that failed their axioms. Groups that validate as
/// generalized groups are kept even when not well-formed as topological
/// generalized groups (relaxed instances are first-class).
#[derive(Debug, Clone, Default)]
pub struct Bundle {
    pub groups: BTreeMap<String, TopGenGroup>,
    pub spaces: BTreeMap<String, FiniteSpace>,
    pub actions: BTreeMap<String, GenAction>,
    pub maps: BTreeMap<String, SpaceMap>,
    pub issues: Vec<Issue>,
}

fn decl_spec(topo: &TopoDecl, carrier: &[String]) -> TopologySpec {
    let mask_of = |set: &[String]| -> Mask {
        set.iter()
            .map(|n| bit(carrier.iter().position(|c| c == n).expect("validated")))
            .fold(0, |a, b| a | b)
    };
    match topo {
        TopoDecl::Discrete => TopologySpec::Discrete,
        TopoDecl::Indiscrete => TopologySpec::Indiscrete,
        TopoDecl::Opens(sets) => TopologySpec::Explicit(sets.iter().map(|s| mask_of(s)).collect()),
        TopoDecl::Subbasis(sets) => {
            TopologySpec::Subbasis(sets.iter().map(|s| mask_of(s)).collect())
        }
    }
}

/// Build the semantic objects of a parsed document.
pub fn elaborate(doc: &Document) -> Bundle {
    let mut bundle = Bundle::default();
    for item in &doc.items {
        match item {
            Item::Group(g) => {
                let idx = |name: &String| g.elements.iter().position(|e| e == name).unwrap();
                let rows: Vec<Vec<usize>> =
                    g.table.iter().map(|row| row.iter().map(idx).collect()).collect();
                let table = CayleyTable::new(g.elements.clone(), rows).expect("validated shape");
                match GenGroup::validate(table) {
                    Err(e) => bundle.issues.push(Issue {
                        kind: "group".into(),
                        name: g.name.clone(),
                        message: e.to_string(),
                    }),
                    Ok(gg) => {
                        let space =
                            FiniteSpace::build(g.elements.clone(), decl_spec(&g.topology, &g.elements))
                                .expect("validated topology");
                        match validate_tgg(gg, space) {
                            Ok(tgg) => {
                                bundle.groups.insert(g.name.clone(), tgg);
                            }
                            Err(e) => bundle.issues.push(Issue {
                                kind: "group".into(),
                                name: g.name.clone(),
                                message: e.to_string(),
                            }),
                        }
                    }
                }
            }
            Item::Space(s) => {
                match FiniteSpace::build(s.points.clone(), decl_spec(&s.topology, &s.points)) {
                    Ok(space) => {
                        bundle.spaces.insert(s.name.clone(), space);
                    }
                    Err(e) => bundle.issues.push(Issue {
                        kind: "space".into(),
                        name: s.name.clone(),
                        message: e.to_string(),
                    }),
                }
            }
            Item::Action(a) => {
                let Some(group) = bundle.groups.get(&a.group) else {
                    bundle.issues.push(Issue {
                        kind: "action".into(),
                        name: a.name.clone(),
                        message: format!("group `{}` did not validate", a.group),
                    });
                    continue;
                };
                let Some(space) = bundle.spaces.get(&a.space) else {
                    bundle.issues.push(Issue {
                        kind: "action".into(),
                        name: a.name.clone(),
                        message: format!("space `{}` did not validate", a.space),
                    });
                    continue;
                };
                let gidx = |name: &String| {
                    group.algebra().names().iter().position(|e| e == name).unwrap()
                };
                let xidx =
                    |name: &String| space.point_names().iter().position(|p| p == name).unwrap();
                let mut table = vec![vec![0usize; space.size()]; group.order()];
                for (t, x, y) in &a.pairs {
                    table[gidx(t)][xidx(x)] = xidx(y);
                }
                match validate_action(group, space, table) {
                    Ok(action) => {
                        bundle.actions.insert(a.name.clone(), action);
                    }
                    Err(e) => bundle.issues.push(Issue {
                        kind: "action".into(),
                        name: a.name.clone(),
                        message: e.to_string(),
                    }),
                }
            }
            Item::Map(m) => {
                let (Some(dom), Some(cod)) =
                    (bundle.spaces.get(&m.dom), bundle.spaces.get(&m.cod))
                else {
                    bundle.issues.push(Issue {
                        kind: "map".into(),
                        name: m.name.clone(),
                        message: "domain or codomain space did not validate".into(),
                    });
                    continue;
                };
                let xidx =
                    |name: &String| dom.point_names().iter().position(|p| p == name).unwrap();
                let yidx =
                    |name: &String| cod.point_names().iter().position(|p| p == name).unwrap();
                let mut table = vec![0usize; dom.size()];
                for (x, y) in &m.pairs {
                    table[xidx(x)] = yidx(y);
                }
                let map = SpaceMap::new(dom.clone(), cod.clone(), table).expect("validated");
                bundle.maps.insert(m.name.clone(), map);
            }
        }
    }
    bundle
}

// ---------------------------------------------------------------------------
// Declaration builders (for witnesses and `--emit`)
// ---------------------------------------------------------------------------

fn topo_decl_for(space: &FiniteSpace, group_block: bool) -> TopoDecl {
    if space.is_discrete() {
        return TopoDecl::Discrete;
    }
    if (0..space.size()).all(|p| space.min_nbhd(p) == space.universe()) {
        // group blocks have no `indiscrete` keyword; the subbasis {∅}
        // generates the same topology
        return if group_block {
            TopoDecl::Subbasis(vec![vec![]])
        } else {
            TopoDecl::Indiscrete
        };
    }
    let names = space.point_names();
    TopoDecl::Subbasis(
        space
            .basis()
            .into_iter()
            .map(|m| members(m).map(|i| names[i].clone()).collect())
            .collect(),
    )
}

pub fn group_item(name: &str, t: &TopGenGroup) -> Item {
    let alg = t.algebra();
    let elements: Vec<String> = alg.names().to_vec();
    let table = alg
        .carrier()
        .rows()
        .iter()
        .map(|row| row.iter().map(|&v| elements[v].clone()).collect())
        .collect();
    Item::Group(GroupDecl {
        name: name.to_string(),
        elements,
        table,
        topology: topo_decl_for(t.space(), true),
    })
}

pub fn space_item(name: &str, x: &FiniteSpace) -> Item {
    Item::Space(SpaceDecl {
        name: name.to_string(),
        points: x.point_names().to_vec(),
        topology: topo_decl_for(x, false),
    })
}

pub fn action_item(name: &str, group: &str, space: &str, a: &GenAction) -> Item {
    let tn = a.group().algebra().names();
    let xn = a.space().point_names();
    let mut pairs = Vec::new();
    for t in 0..a.group().order() {
        for x in 0..a.space().size() {
            pairs.push((tn[t].clone(), xn[x].clone(), xn[a.act(t, x)].clone()));
        }
    }
    Item::Action(ActionDecl {
        name: name.to_string(),
        group: group.to_string(),
        space: space.to_string(),
        pairs,
    })
}

pub fn map_item(name: &str, dom: &str, cod: &str, m: &SpaceMap) -> Item {
    let xn = m.dom().point_names();
    let yn = m.cod().point_names();
    let pairs = (0..m.dom().size())
        .map(|x| (xn[x].clone(), yn[m.apply(x)].clone()))
        .collect();
    Item::Map(MapDecl {
        name: name.to_string(),
        dom: dom.to_string(),
        cod: cod.to_string(),
        pairs,
    })
}

/// A standalone replayable document for one action (and optionally a
/// self-map of its space): `group T`, `space X`, `action A`, `map f`.
pub fn action_document(a: &GenAction, map: Option<&SpaceMap>) -> Document {
    let mut items = vec![
        group_item("T", a.group()),
        space_item("X", a.space()),
        action_item("A", "T", "X", a),
    ];
    if let Some(m) = map {
        items.push(map_item("f", "X", "X", m));
    }
    let mut doc = Document { items };
    doc.items
        .sort_by(|a, b| (a.kind_rank(), a.name()).cmp(&(b.kind_rank(), b.name())));
    doc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::sign_instance;
    use crate::tgg;

    const SIGN_DOC: &str = r#"
# the sign instance
group T { elements: +1 -1 ; table: +1 +1 -1 -1 ; discrete }
space X { points: -1 0 1 ; discrete }
action A : T on X {
  +1 -1 -> 1   +1 0 -> 0   +1 1 -> 1
  -1 -1 -> -1  -1 0 -> 0   -1 1 -> -1
}
"#;

    #[test]
    fn sign_document_parses_and_elaborates() {
        let doc = parse_document(SIGN_DOC).unwrap();
        let bundle = elaborate(&doc);
        assert!(bundle.issues.is_empty());
        let a = &bundle.actions["A"];
        assert_eq!(a.table(), sign_instance().table());
    }

    #[test]
    fn round_trip_is_identity_on_documents() {
        let doc = parse_document(SIGN_DOC).unwrap();
        let text = serialize_document(&doc);
        let doc2 = parse_document(&text).unwrap();
        assert_eq!(doc, doc2);
        assert_eq!(serialize_document(&doc2), text);
    }

    #[test]
    fn empty_document_round_trips_to_empty_text() {
        let doc = parse_document("").unwrap();
        assert!(doc.items.is_empty());
        assert_eq!(serialize_document(&doc), "");
    }

    #[test]
    fn corpus_round_trips() {
        for (name, t) in tgg::canonical_instances().into_iter().chain(tgg::relaxed_instances())
        {
            let doc = Document { items: vec![group_item(&name, &t)] };
            let text = serialize_document(&doc);
            let doc2 = parse_document(&text).unwrap_or_else(|d| {
                panic!("corpus member {name} failed to reparse: {d:?}")
            });
            assert_eq!(doc, doc2, "{name}");
            let bundle = elaborate(&doc2);
            assert!(bundle.issues.is_empty(), "{name}");
            let back = &bundle.groups[&name];
            assert_eq!(back.algebra(), t.algebra(), "{name}");
            assert_eq!(back.space(), t.space(), "{name}");
        }
    }

    #[test]
    fn witness_documents_round_trip_and_revalidate() {
        let a = sign_instance();
        let neg = SpaceMap::new(a.space().clone(), a.space().clone(), vec![2, 1, 0]).unwrap();
        let doc = action_document(&a, Some(&neg));
        let text = serialize_document(&doc);
        let doc2 = parse_document(&text).unwrap();
        assert_eq!(doc, doc2);
        let bundle = elaborate(&doc2);
        assert!(bundle.issues.is_empty());
        assert_eq!(bundle.actions["A"].table(), a.table());
        assert_eq!(bundle.maps["f"].table(), neg.table());
    }

    #[test]
    fn missing_pair_is_a_diagnostic() {
        let text = r#"
group G { elements: t0 ; table: t0 ; discrete }
space X { points: x0 x1 ; discrete }
action A : G on X { t0 x0 -> x1 }
"#;
        let diags = parse_document(text).unwrap_err();
        assert!(diags.iter().any(|d| d.message.contains("missing pair (t0, x1)")), "{diags:?}");
    }

    #[test]
    fn duplicate_pair_is_a_diagnostic() {
        let text = r#"
group G { elements: t0 ; table: t0 ; discrete }
space X { points: x0 ; discrete }
action A : G on X { t0 x0 -> x0  t0 x0 -> x0 }
"#;
        let diags = parse_document(text).unwrap_err();
        assert!(diags.iter().any(|d| d.message.contains("duplicate pair")));
    }

    #[test]
    fn non_topology_opens_is_a_diagnostic() {
        let text = "space X { points: a b ; opens: {} {a} {b} }";
        let diags = parse_document(text).unwrap_err();
        assert!(diags.iter().any(|d| d.message.contains("not a topology")), "{diags:?}");
    }

    #[test]
    fn unknown_name_is_a_diagnostic() {
        let text = "space X { points: a ; subbasis: {zz} }";
        let diags = parse_document(text).unwrap_err();
        assert!(diags.iter().any(|d| d.message.contains("unknown name `zz`")));
    }

    #[test]
    fn duplicate_declaration_is_a_diagnostic() {
        let text = "space X { points: a ; discrete } space X { points: b ; discrete }";
        let diags = parse_document(text).unwrap_err();
        assert!(diags.iter().any(|d| d.message.contains("duplicate space declaration")));
    }

    #[test]
    fn diagnostics_carry_positions_and_are_deterministic() {
        let text = "space X { points: a ;\n  subbasis: {zz} }";
        let d1 = parse_document(text).unwrap_err();
        let d2 = parse_document(text).unwrap_err();
        assert_eq!(d1, d2);
        assert_eq!(d1[0].line, 2);
        assert!(d1[0].col > 0);
        assert!(!d1[0].remediation.is_empty());
    }

    #[test]
    fn invalid_group_table_is_an_elaboration_issue_not_a_diagnostic() {
        // null semigroup: parses fine, fails the generalized-group axioms
        let text = "group G { elements: a b ; table: a a a a ; discrete }";
        let doc = parse_document(text).unwrap();
        let bundle = elaborate(&doc);
        assert!(bundle.groups.is_empty());
        assert_eq!(bundle.issues.len(), 1);
        assert!(bundle.issues[0].message.contains("no local identity"));
    }

    #[test]
    fn group_with_subbasis_topology() {
        let text = "group G { elements: a b ; table: a a b b ; subbasis: {a} }";
        let doc = parse_document(text).unwrap();
        let bundle = elaborate(&doc);
        assert!(bundle.issues.is_empty());
        let g = &bundle.groups["G"];
        assert!(!g.report().hausdorff);
        assert!(g.report().m2_continuous);
    }
}
