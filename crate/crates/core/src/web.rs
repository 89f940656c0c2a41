//! Webs as sliced diagrams: a source object and a sequence of rows of
//! elementary cells, read bottom to top.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::exterior::{Factor, Orient, Side, Sign, SpaceObject};
use crate::scalar::{RootOrder, Scalar};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Cell {
    Id(Factor),
    /// `(k⁺, l⁺) → (k+l)⁺`
    Merge(usize, usize),
    /// `(k+l)⁺ → (k⁺, l⁺)`
    Split(usize, usize),
    /// `k⁺ → (n-k)⁻`
    TagOut(usize, Side),
    /// `k⁻ → (n-k)⁺`
    TagIn(usize, Side),
    Cup(usize, Orient),
    Cap(usize, Orient),
}

impl Cell {
    pub fn inputs(&self) -> Vec<Factor> {
        match *self {
            Cell::Id(f) => vec![f],
            Cell::Merge(k, l) => vec![Factor::up(k), Factor::up(l)],
            Cell::Split(k, l) => vec![Factor::up(k + l)],
            Cell::TagOut(k, _) => vec![Factor::up(k)],
            Cell::TagIn(k, _) => vec![Factor::down(k)],
            Cell::Cup(..) => vec![],
            Cell::Cap(k, o) => o.legs(k).to_vec(),
        }
    }

    pub fn outputs(&self, n: usize) -> Vec<Factor> {
        match *self {
            Cell::Id(f) => vec![f],
            Cell::Merge(k, l) => vec![Factor::up(k + l)],
            Cell::Split(k, l) => vec![Factor::up(k), Factor::up(l)],
            Cell::TagOut(k, _) => vec![Factor::down(n.saturating_sub(k))],
            Cell::TagIn(k, _) => vec![Factor::up(n.saturating_sub(k))],
            Cell::Cup(k, o) => o.legs(k).to_vec(),
            Cell::Cap(..) => vec![],
        }
    }

    /// Labels written in the cell itself.
    fn written_labels(&self) -> Vec<usize> {
        match *self {
            Cell::Id(f) => vec![f.k],
            Cell::Merge(k, l) | Cell::Split(k, l) => vec![k, l],
            Cell::TagOut(k, _) | Cell::TagIn(k, _) | Cell::Cup(k, _) | Cell::Cap(k, _) => vec![k],
        }
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, Cell::Id(_))
    }

    /// Reflection in a vertical line.
    pub fn mirror(&self) -> Cell {
        match *self {
            Cell::Id(f) => Cell::Id(f),
            Cell::Merge(k, l) => Cell::Merge(l, k),
            Cell::Split(k, l) => Cell::Split(l, k),
            Cell::TagOut(k, s) => Cell::TagOut(k, s.flip()),
            Cell::TagIn(k, s) => Cell::TagIn(k, s.flip()),
            Cell::Cup(k, o) => Cell::Cup(k, o.flip()),
            Cell::Cap(k, o) => Cell::Cap(k, o.flip()),
        }
    }
}

fn side_str(s: Side) -> &'static str {
    match s {
        Side::Left => "L",
        Side::Right => "R",
    }
}

fn orient_str(o: Orient) -> &'static str {
    match o {
        Orient::MinusPlus => "-+",
        Orient::PlusMinus => "+-",
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Cell::Id(x) => write!(f, "id {x}"),
            Cell::Merge(k, l) => write!(f, "merge {k} {l}"),
            Cell::Split(k, l) => write!(f, "split {k} {l}"),
            Cell::TagOut(k, s) => write!(f, "tagout {k} {}", side_str(s)),
            Cell::TagIn(k, s) => write!(f, "tagin {k} {}", side_str(s)),
            Cell::Cup(k, o) => write!(f, "cup {k} {}", orient_str(o)),
            Cell::Cap(k, o) => write!(f, "cap {k} {}", orient_str(o)),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WebError {
    #[error("boundary mismatch: {left} does not match {right}")]
    BoundaryMismatch { left: String, right: String },
    #[error("malformed web: {0}")]
    Invalid(Diagnostic),
    #[error("n must be at least 2, got {0}")]
    BadRank(usize),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DiagnosticKind {
    LabelOutOfRange {
        label: usize,
    },
    OrientationMismatch {
        expected: Factor,
        found: Factor,
    },
    LabelMismatch {
        expected: Factor,
        found: Factor,
    },
    /// The row needs more strands than the boundary has.
    RowTooWide,
    /// The row leaves strands of the boundary unconsumed.
    RowTooNarrow {
        unused: usize,
    },
}

/// A located problem; `row` and `col` are 1-based, `row = 0` means the source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub row: usize,
    pub col: usize,
    pub kind: DiagnosticKind,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "row {}, cell {}: ", self.row, self.col)?;
        match &self.kind {
            DiagnosticKind::LabelOutOfRange { label } => write!(f, "label out of range ({label})"),
            DiagnosticKind::OrientationMismatch { expected, found } => {
                write!(
                    f,
                    "orientation mismatch (boundary {expected}, cell consumes {found})"
                )
            }
            DiagnosticKind::LabelMismatch { expected, found } => {
                write!(
                    f,
                    "label mismatch (boundary {expected}, cell consumes {found})"
                )
            }
            DiagnosticKind::RowTooWide => {
                write!(f, "row consumes more strands than the boundary has")
            }
            DiagnosticKind::RowTooNarrow { unused } => {
                write!(f, "row leaves {unused} boundary strands unconsumed")
            }
        }
    }
}

/// Outcome of [`WebIR::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Validation {
    Valid,
    /// Well formed, but some strand leaves `{0..n}`; the web is the zero morphism.
    Zero(Diagnostic),
    Invalid(Diagnostic),
}

impl Validation {
    pub fn is_ok(&self) -> bool {
        matches!(self, Validation::Valid)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct WebIR {
    pub source: SpaceObject,
    pub rows: Vec<Vec<Cell>>,
}

impl WebIR {
    pub fn identity(source: SpaceObject) -> WebIR {
        WebIR {
            source,
            rows: Vec::new(),
        }
    }

    pub fn new(source: SpaceObject, rows: Vec<Vec<Cell>>) -> WebIR {
        WebIR { source, rows }
    }

    /// A single cell, with all its inputs as the source.
    pub fn cell(n: usize, cell: Cell) -> WebIR {
        WebIR::new(SpaceObject::new(n, cell.inputs()), vec![vec![cell]])
    }

    pub fn n(&self) -> usize {
        self.source.n
    }

    pub fn cell_count(&self) -> usize {
        self.rows
            .iter()
            .flatten()
            .filter(|c| !c.is_identity())
            .count()
    }

    /// Boundaries before each row and after the last, without range checks.
    pub fn boundaries(&self) -> Result<Vec<SpaceObject>, Diagnostic> {
        let n = self.n();
        let mut cur = self.source.clone();
        let mut out = vec![cur.clone()];
        for (r, row) in self.rows.iter().enumerate() {
            let mut pos = 0;
            let mut next = Vec::new();
            for (c, cell) in row.iter().enumerate() {
                let at = |kind| Diagnostic {
                    row: r + 1,
                    col: c + 1,
                    kind,
                };
                for found in cell.inputs() {
                    let Some(&expected) = cur.factors.get(pos) else {
                        return Err(at(DiagnosticKind::RowTooWide));
                    };
                    if expected.k != found.k {
                        return Err(at(DiagnosticKind::LabelMismatch { expected, found }));
                    }
                    if expected.sign != found.sign {
                        return Err(at(DiagnosticKind::OrientationMismatch { expected, found }));
                    }
                    pos += 1;
                }
                next.extend(cell.outputs(n));
            }
            if pos != cur.len() {
                return Err(Diagnostic {
                    row: r + 1,
                    col: row.len(),
                    kind: DiagnosticKind::RowTooNarrow {
                        unused: cur.len() - pos,
                    },
                });
            }
            cur = SpaceObject::new(n, next);
            out.push(cur.clone());
        }
        Ok(out)
    }

    pub fn target(&self) -> Result<SpaceObject, WebError> {
        self.boundaries()
            .map(|mut b| b.pop().unwrap())
            .map_err(WebError::Invalid)
    }

    pub fn validate(&self) -> Validation {
        let n = self.n();
        let bounds = match self.boundaries() {
            Ok(b) => b,
            Err(d) => return Validation::Invalid(d),
        };
        for (c, f) in self.source.factors.iter().enumerate() {
            if f.k > n {
                return Validation::Zero(Diagnostic {
                    row: 0,
                    col: c + 1,
                    kind: DiagnosticKind::LabelOutOfRange { label: f.k },
                });
            }
        }
        for (r, row) in self.rows.iter().enumerate() {
            for (c, cell) in row.iter().enumerate() {
                let mut labels = cell.written_labels();
                labels.extend(cell.outputs(n).iter().map(|f| f.k));
                if let Some(label) = labels.into_iter().find(|&k| k > n) {
                    return Validation::Zero(Diagnostic {
                        row: r + 1,
                        col: c + 1,
                        kind: DiagnosticKind::LabelOutOfRange { label },
                    });
                }
            }
        }
        debug_assert!(bounds.iter().all(|b| b.validate().is_ok()));
        Validation::Valid
    }

    pub fn is_zero_flagged(&self) -> bool {
        matches!(self.validate(), Validation::Zero(_))
    }

    /// `self` followed by `g` (stacked on top).
    pub fn compose(&self, g: &WebIR) -> Result<WebIR, WebError> {
        let t = self.target()?;
        if t != g.source {
            return Err(WebError::BoundaryMismatch {
                left: t.to_string(),
                right: g.source.to_string(),
            });
        }
        let mut rows = self.rows.clone();
        rows.extend(g.rows.iter().cloned());
        Ok(WebIR::new(self.source.clone(), rows))
    }

    /// Side-by-side juxtaposition; the shorter web is padded with identity rows.
    pub fn tensor(&self, g: &WebIR) -> Result<WebIR, WebError> {
        if self.n() != g.n() {
            return Err(WebError::BoundaryMismatch {
                left: format!("n={}", self.n()),
                right: format!("n={}", g.n()),
            });
        }
        let left = self.boundaries().map_err(WebError::Invalid)?;
        let right = g.boundaries().map_err(WebError::Invalid)?;
        let height = self.rows.len().max(g.rows.len());
        let pad = |w: &WebIR, bounds: &[SpaceObject], r: usize| -> Vec<Cell> {
            match w.rows.get(r) {
                Some(row) => row.clone(),
                None => bounds
                    .last()
                    .unwrap()
                    .factors
                    .iter()
                    .map(|&f| Cell::Id(f))
                    .collect(),
            }
        };
        let rows = (0..height)
            .map(|r| {
                let mut row = pad(self, &left, r);
                row.extend(pad(g, &right, r));
                row
            })
            .collect();
        Ok(WebIR::new(self.source.concat(&g.source), rows))
    }

    /// Reflection in a vertical line.
    pub fn mirror(&self) -> WebIR {
        let mut source = self.source.clone();
        source.factors.reverse();
        let rows = self
            .rows
            .iter()
            .map(|row| row.iter().rev().map(Cell::mirror).collect())
            .collect();
        WebIR::new(source, rows)
    }

    /// Rotation by a half turn. The source is bent up with nested cups and the
    /// target bent down with nested caps; `cups_left` chooses which side the
    /// cups go on. Both choices agree under evaluation.
    pub fn rotate(&self, cups_left: bool) -> Result<WebIR, WebError> {
        let n = self.n();
        let x = self.source.factors.clone();
        let y = self.target()?.factors;
        let (p, q) = (x.len(), y.len());
        let yd: Vec<Factor> = y.iter().rev().map(|f| f.dual()).collect();
        // the orientation whose left leg is `f`
        let first = |f: Factor| match f.sign {
            Sign::Plus => Orient::PlusMinus,
            Sign::Minus => Orient::MinusPlus,
        };
        let mut b = WebBuilder::new(SpaceObject::new(n, yd));
        if cups_left {
            // (Y*) → (X*, X, Y*) → (X*, Y, Y*) → (X*)
            for j in (0..p).rev() {
                b.apply(p - 1 - j, Cell::Cup(x[j].k, first(x[j].dual())))?;
            }
            for row in &self.rows {
                b.apply_row(p, row)?;
            }
            for j in (0..q).rev() {
                b.apply(p + j, Cell::Cap(y[j].k, first(y[j])))?;
            }
        } else {
            // (Y*) → (Y*, X, X*) → (Y*, Y, X*) → (X*)
            for (j, f) in x.iter().enumerate() {
                b.apply(q + j, Cell::Cup(f.k, first(*f)))?;
            }
            for row in &self.rows {
                b.apply_row(q, row)?;
            }
            for (j, f) in y.iter().enumerate() {
                b.apply(q - 1 - j, Cell::Cap(f.k, first(f.dual())))?;
            }
        }
        Ok(b.build())
    }

    /// Reverses every orientation. Trivalent cells become half-turn rotations of
    /// the opposite trivalent cell; tags swap direction and move to the other side
    /// of the reversed strand.
    pub fn arrow_reverse(&self) -> Result<WebIR, WebError> {
        let n = self.n();
        let source = SpaceObject::new(n, self.source.factors.iter().map(|f| f.dual()).collect());
        let mut out = WebIR::identity(source);
        for row in &self.rows {
            let mut slab: Option<WebIR> = None;
            for &cell in row {
                let piece = match cell {
                    Cell::Id(f) => WebIR::identity(SpaceObject::new(n, vec![f.dual()])),
                    Cell::Merge(k, l) => WebIR::cell(n, Cell::Split(l, k)).rotate(false)?,
                    Cell::Split(k, l) => WebIR::cell(n, Cell::Merge(l, k)).rotate(false)?,
                    Cell::TagOut(k, s) => WebIR::cell(n, Cell::TagIn(k, s.flip())),
                    Cell::TagIn(k, s) => WebIR::cell(n, Cell::TagOut(k, s.flip())),
                    Cell::Cup(k, o) => WebIR::cell(n, Cell::Cup(k, o.flip())),
                    Cell::Cap(k, o) => WebIR::cell(n, Cell::Cap(k, o.flip())),
                };
                slab = Some(match slab {
                    None => piece,
                    Some(s) => s.tensor(&piece)?,
                });
            }
            if let Some(s) = slab {
                out = out.compose(&s)?;
            }
        }
        Ok(out)
    }

    pub fn parse(text: &str) -> Result<WebIR, ParseError> {
        let parsed = parse_blocks(text)?;
        if parsed.explicit {
            return Err(ParseError {
                line: parsed.header_line,
                col: 1,
                msg: "expected a single web, found a linear combination".into(),
            });
        }
        let rows = parsed
            .blocks
            .into_iter()
            .next()
            .map(|b| b.1)
            .unwrap_or_default();
        Ok(WebIR::new(parsed.source, rows))
    }

    pub fn render(&self) -> String {
        let mut out = format!("web n={} src={}\n", self.n(), render_object(&self.source));
        render_rows(&mut out, &self.rows);
        out
    }
}

impl fmt::Display for WebIR {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn render_object(obj: &SpaceObject) -> String {
    let parts: Vec<String> = obj.factors.iter().map(|f| f.to_string()).collect();
    format!("({})", parts.join(","))
}

fn render_rows(out: &mut String, rows: &[Vec<Cell>]) {
    for row in rows {
        let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
        out.push_str("  ");
        out.push_str(&cells.join(" | "));
        out.push('\n');
    }
}

/// Builds a web row by row while tracking the running boundary.
#[derive(Clone, Debug)]
pub struct WebBuilder {
    source: SpaceObject,
    rows: Vec<Vec<Cell>>,
    cur: Vec<Factor>,
}

impl WebBuilder {
    pub fn new(source: SpaceObject) -> Self {
        let cur = source.factors.clone();
        WebBuilder {
            source,
            rows: Vec::new(),
            cur,
        }
    }

    pub fn n(&self) -> usize {
        self.source.n
    }

    pub fn boundary(&self) -> &[Factor] {
        &self.cur
    }

    /// Adds a row applying `cell` to the boundary strands starting at `pos`.
    pub fn apply(&mut self, pos: usize, cell: Cell) -> Result<&mut Self, WebError> {
        self.apply_row(pos, &[cell])
    }

    /// Adds a row applying `cells` side by side starting at strand `pos`.
    pub fn apply_row(&mut self, pos: usize, cells: &[Cell]) -> Result<&mut Self, WebError> {
        let n = self.n();
        let inputs: Vec<Factor> = cells.iter().flat_map(|c| c.inputs()).collect();
        let end = pos + inputs.len();
        if end > self.cur.len() || self.cur[pos..end] != inputs[..] {
            return Err(WebError::BoundaryMismatch {
                left: render_object(&SpaceObject::new(n, self.cur.clone())),
                right: format!(
                    "{} at strand {pos}",
                    render_object(&SpaceObject::new(n, inputs))
                ),
            });
        }
        let mut row: Vec<Cell> = self.cur[..pos].iter().map(|&f| Cell::Id(f)).collect();
        row.extend_from_slice(cells);
        row.extend(self.cur[end..].iter().map(|&f| Cell::Id(f)));
        let mut next = self.cur[..pos].to_vec();
        next.extend(cells.iter().flat_map(|c| c.outputs(n)));
        next.extend_from_slice(&self.cur[end..]);
        self.cur = next;
        self.rows.push(row);
        Ok(self)
    }

    /// Appends all rows of `w`, whose source must sit at strand `pos`.
    pub fn apply_web(&mut self, pos: usize, w: &WebIR) -> Result<&mut Self, WebError> {
        let width = w.source.len();
        if pos + width > self.cur.len() || self.cur[pos..pos + width] != w.source.factors[..] {
            return Err(WebError::BoundaryMismatch {
                left: render_object(&SpaceObject::new(self.n(), self.cur.clone())),
                right: format!("{} at strand {pos}", render_object(&w.source)),
            });
        }
        for row in &w.rows {
            self.apply_row(pos, row)?;
        }
        Ok(self)
    }

    pub fn build(self) -> WebIR {
        WebIR::new(self.source, self.rows)
    }
}

/// A formal linear combination of webs sharing source and target. Coefficients
/// live at `root`, so crossing prefactors such as `q^{1/2}` are exact.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WebLinComb {
    pub source: SpaceObject,
    pub target: SpaceObject,
    pub root: RootOrder,
    terms: BTreeMap<WebIR, Scalar>,
    explicit_blocks: bool,
}

impl WebLinComb {
    pub fn new(source: SpaceObject, target: SpaceObject, root: RootOrder) -> Self {
        WebLinComb {
            source,
            target,
            root,
            terms: BTreeMap::new(),
            explicit_blocks: true,
        }
    }

    pub fn from_web(w: WebIR) -> Result<Self, WebError> {
        let mut out = WebLinComb::new(w.source.clone(), w.target()?, RootOrder::ONE);
        out.add_term(w, Scalar::one())?;
        Ok(out)
    }

    pub fn add_term(&mut self, w: WebIR, c: Scalar) -> Result<(), WebError> {
        let t = w.target()?;
        if w.source != self.source || t != self.target {
            return Err(WebError::BoundaryMismatch {
                left: format!("{} -> {}", self.source, self.target),
                right: format!("{} -> {}", w.source, t),
            });
        }
        if c.is_zero() {
            return Ok(());
        }
        let slot = self.terms.entry(w).or_default();
        *slot += &c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
        Ok(())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WebIR, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn render(&self) -> String {
        let mut out = format!(
            "web n={} src={}",
            self.source.n,
            render_object(&self.source)
        );
        if self.root != RootOrder::ONE {
            out.push_str(&format!(" root={}", self.root.get()));
        }
        out.push('\n');
        for (w, c) in &self.terms {
            out.push_str(&format!("+ {} *\n", c.render(self.root)));
            render_rows(&mut out, &w.rows);
        }
        out
    }

    /// Parses a single web or a combination whose blocks start with `+ <scalar> *`.
    pub fn parse(text: &str) -> Result<WebLinComb, ParseError> {
        let parsed = parse_blocks(text)?;
        let at_header = |e: WebError| ParseError {
            line: parsed.header_line,
            col: 1,
            msg: e.to_string(),
        };
        let source = parsed.source;
        let first = WebIR::new(
            source.clone(),
            parsed
                .blocks
                .first()
                .map(|b| b.1.clone())
                .unwrap_or_default(),
        );
        let target = first.target().map_err(at_header)?;
        let mut out = WebLinComb::new(source.clone(), target, parsed.root);
        out.explicit_blocks = parsed.explicit;
        for (c, rows) in parsed.blocks {
            out.add_term(WebIR::new(source.clone(), rows), c)
                .map_err(at_header)?;
        }
        if !parsed.explicit && out.terms.is_empty() {
            out.terms.insert(first, Scalar::one());
        }
        Ok(out)
    }
}

struct ParsedBlocks {
    header_line: usize,
    source: SpaceObject,
    root: RootOrder,
    explicit: bool,
    blocks: Vec<(Scalar, Vec<Vec<Cell>>)>,
}

fn parse_blocks(text: &str) -> Result<ParsedBlocks, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
    let Some((hline, header)) = lines.next() else {
        return Err(ParseError {
            line: 1,
            col: 1,
            msg: "empty input".into(),
        });
    };
    let (source, root) = parse_header(hline, header)?;
    let n = source.n;
    let mut blocks: Vec<(Scalar, Vec<Vec<Cell>>)> = Vec::new();
    let mut explicit = false;
    for (ln, line) in lines {
        let trimmed = line.trim();
        let indent = line.len() - line.trim_start().len();
        if let Some(rest) = trimmed.strip_prefix('+') {
            let Some(body) = rest.trim_end().strip_suffix('*') else {
                return Err(ParseError {
                    line: ln,
                    col: indent + trimmed.len(),
                    msg: "coefficient line must end with '*'".into(),
                });
            };
            let c = Scalar::parse(body.trim(), root).map_err(|e| ParseError {
                line: ln,
                col: indent + 2,
                msg: e.to_string(),
            })?;
            if !explicit && !blocks.is_empty() {
                return Err(ParseError {
                    line: ln,
                    col: indent + 1,
                    msg: "rows before the first coefficient line".into(),
                });
            }
            explicit = true;
            blocks.push((c, Vec::new()));
            continue;
        }
        if blocks.is_empty() {
            blocks.push((Scalar::one(), Vec::new()));
        }
        let row = parse_row(ln, line, n)?;
        blocks.last_mut().unwrap().1.push(row);
    }
    if blocks.is_empty() {
        blocks.push((Scalar::one(), Vec::new()));
    }
    Ok(ParsedBlocks {
        header_line: hline,
        source,
        root,
        explicit,
        blocks,
    })
}

fn parse_header(ln: usize, line: &str) -> Result<(SpaceObject, RootOrder), ParseError> {
    let err = |col: usize, msg: &str| ParseError {
        line: ln,
        col,
        msg: msg.into(),
    };
    let mut words = tokens(line);
    match words.next() {
        Some((_, "web")) => {}
        Some((c, _)) => return Err(err(c, "expected 'web'")),
        None => return Err(err(1, "expected 'web'")),
    }
    let mut n = None;
    let mut src = None;
    let mut root = RootOrder::ONE;
    for (c, w) in words {
        if let Some(v) = w.strip_prefix("n=") {
            let value: usize = v.parse().map_err(|_| err(c + 2, "n must be an integer"))?;
            if value < 2 {
                return Err(err(c + 2, "n must be at least 2"));
            }
            n = Some(value);
        } else if let Some(v) = w.strip_prefix("src=") {
            src = Some((c + 4, v));
        } else if let Some(v) = w.strip_prefix("root=") {
            let value: u32 = v
                .parse()
                .map_err(|_| err(c + 5, "root must be a positive integer"))?;
            if value == 0 {
                return Err(err(c + 5, "root must be a positive integer"));
            }
            root = RootOrder::new(value);
        } else {
            return Err(err(c, &format!("unexpected header field '{w}'")));
        }
    }
    let n = n.ok_or_else(|| err(1, "missing n=<int>"))?;
    let (c, body) = src.ok_or_else(|| err(1, "missing src=(...)"))?;
    let inner = body
        .strip_prefix('(')
        .and_then(|b| b.strip_suffix(')'))
        .ok_or_else(|| err(c, "src must be parenthesized"))?;
    let mut factors = Vec::new();
    if !inner.trim().is_empty() {
        let mut off = c + 1;
        for part in inner.split(',') {
            factors.push(parse_factor(part.trim(), n).map_err(|m| err(off, &m))?);
            off += part.len() + 1;
        }
    }
    Ok((SpaceObject::new(n, factors), root))
}

/// Whitespace-separated words with their 1-based columns.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out.into_iter()
}

fn parse_label(word: &str, n: usize) -> Result<usize, String> {
    let k: usize = word
        .parse()
        .map_err(|_| format!("malformed label '{word}'"))?;
    if k > n {
        return Err(format!("label {k} out of range for n = {n}"));
    }
    Ok(k)
}

fn parse_factor(word: &str, n: usize) -> Result<Factor, String> {
    let (label, sign) = match word.chars().last() {
        Some('+') => (&word[..word.len() - 1], Sign::Plus),
        Some('-') => (&word[..word.len() - 1], Sign::Minus),
        _ => {
            return Err(format!(
                "malformed strand '{word}', expected <label>+ or <label>-"
            ))
        }
    };
    Ok(Factor::new(parse_label(label, n)?, sign))
}

fn parse_row(ln: usize, line: &str, n: usize) -> Result<Vec<Cell>, ParseError> {
    let mut cells = Vec::new();
    let mut offset = 0;
    for chunk in line.split('|') {
        let words: Vec<(usize, &str)> = tokens(chunk).map(|(c, w)| (c + offset, w)).collect();
        offset += chunk.len() + 1;
        let err = |col: usize, msg: String| ParseError { line: ln, col, msg };
        let Some(&(c0, op)) = words.first() else {
            return Err(err(offset, "empty cell".into()));
        };
        let arg = |i: usize| -> Result<(usize, &str), ParseError> {
            words
                .get(i)
                .copied()
                .ok_or_else(|| err(c0, format!("'{op}' expects {} argument(s)", arity(op))))
        };
        if words.len() != arity(op) + 1 && arity(op) != 0 {
            return Err(err(c0, format!("'{op}' expects {} argument(s)", arity(op))));
        }
        let label = |i: usize| -> Result<usize, ParseError> {
            let (c, w) = arg(i)?;
            parse_label(w, n).map_err(|m| err(c, m))
        };
        let side = |i: usize| -> Result<Side, ParseError> {
            match arg(i)? {
                (_, "L") => Ok(Side::Left),
                (_, "R") => Ok(Side::Right),
                (c, w) => Err(err(c, format!("expected L or R, found '{w}'"))),
            }
        };
        let orient = |i: usize| -> Result<Orient, ParseError> {
            match arg(i)? {
                (_, "-+") => Ok(Orient::MinusPlus),
                (_, "+-") => Ok(Orient::PlusMinus),
                (c, w) => Err(err(c, format!("expected -+ or +-, found '{w}'"))),
            }
        };
        let cell = match op {
            "id" => {
                let (c, w) = arg(1)?;
                Cell::Id(parse_factor(w, n).map_err(|m| err(c, m))?)
            }
            "merge" => Cell::Merge(label(1)?, label(2)?),
            "split" => Cell::Split(label(1)?, label(2)?),
            "tagout" => Cell::TagOut(label(1)?, side(2)?),
            "tagin" => Cell::TagIn(label(1)?, side(2)?),
            "cup" => Cell::Cup(label(1)?, orient(2)?),
            "cap" => Cell::Cap(label(1)?, orient(2)?),
            other => return Err(err(c0, format!("unknown cell '{other}'"))),
        };
        cells.push(cell);
    }
    Ok(cells)
}

fn arity(op: &str) -> usize {
    match op {
        "id" => 1,
        "merge" | "split" | "tagout" | "tagin" | "cup" | "cap" => 2,
        _ => 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_render_round_trip() {
        let text = "web n=3 src=(2+)\n  split 1 1\n  merge 1 1\n";
        let w = WebIR::parse(text).unwrap();
        assert_eq!(
            w.rows,
            vec![vec![Cell::Split(1, 1)], vec![Cell::Merge(1, 1)]]
        );
        assert_eq!(w.render(), text);
        let circle = WebIR::parse("web n=2 src=()\n  cup 1 -+\n  cap 1 -+").unwrap();
        assert_eq!(circle.target().unwrap(), SpaceObject::empty(2));
        assert_eq!(WebIR::parse(&circle.render()).unwrap(), circle);
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let e = WebIR::parse("web n=3 src=(2+)\n  merge 1 x").unwrap_err();
        assert_eq!((e.line, e.col), (2, 11));
        assert!(WebIR::parse("web n=3 src=(2+)\n  frob 1").is_err());
        assert!(WebIR::parse("web n=3 src=(4+)").is_err());
        assert!(WebIR::parse("web n=3 src=(-1+)").is_err());
        assert!(WebIR::parse("web src=(1+)").is_err());
    }

    #[test]
    fn validation_diagnostics() {
        let bigon = WebIR::parse("web n=3 src=(2+)\n split 1 1\n merge 1 1").unwrap();
        assert_eq!(bigon.validate(), Validation::Valid);
        let big = WebIR::parse("web n=3 src=(2+,2+)\n merge 2 2").unwrap();
        match big.validate() {
            Validation::Zero(d) => assert_eq!(d.kind, DiagnosticKind::LabelOutOfRange { label: 4 }),
            other => panic!("unexpected {other:?}"),
        }
        let bad = WebIR::parse("web n=3 src=(1-)\n id 1+").unwrap();
        match bad.validate() {
            Validation::Invalid(d) => {
                assert!(matches!(d.kind, DiagnosticKind::OrientationMismatch { .. }));
                assert_eq!((d.row, d.col), (1, 1));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn compose_and_tensor() {
        let n = 3;
        let split = WebIR::cell(n, Cell::Split(1, 1));
        let merge = WebIR::cell(n, Cell::Merge(1, 1));
        let bigon = split.compose(&merge).unwrap();
        assert_eq!(bigon.rows.len(), 2);
        assert!(merge.compose(&merge).is_err());
        let t = WebIR::identity(SpaceObject::up(n, &[1]))
            .tensor(&WebIR::identity(SpaceObject::up(n, &[2])))
            .unwrap();
        assert_eq!(t, WebIR::identity(SpaceObject::up(n, &[1, 2])));
        let padded = bigon
            .tensor(&WebIR::identity(SpaceObject::up(n, &[1])))
            .unwrap();
        assert_eq!(
            padded.rows[1],
            vec![Cell::Merge(1, 1), Cell::Id(Factor::up(1))]
        );
    }

    #[test]
    fn rotation_and_reversal_boundaries() {
        let n = 4;
        let m = WebIR::cell(n, Cell::Merge(1, 2));
        for left in [false, true] {
            let r = m.rotate(left).unwrap();
            assert_eq!(r.source.factors, vec![Factor::down(3)]);
            assert_eq!(
                r.target().unwrap().factors,
                vec![Factor::down(2), Factor::down(1)]
            );
        }
        let a = m.arrow_reverse().unwrap();
        assert_eq!(a.source.factors, vec![Factor::down(1), Factor::down(2)]);
        assert_eq!(a.target().unwrap().factors, vec![Factor::down(3)]);
        assert_eq!(m.mirror().rows, vec![vec![Cell::Merge(2, 1)]]);
    }

    #[test]
    fn linear_combinations_parse() {
        let text = "web n=2 src=(2+) root=2\n+ -u *\n  split 1 1\n  merge 1 1\n+ 3/2*q^2 *\n";
        let c = WebLinComb::parse(text).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(WebLinComb::parse(&c.render()).unwrap(), c);
        assert!(WebIR::parse(text).is_err());
    }
}
