//! The soliton cellular automaton on `B^{2,1}` cells: time evolution by carriers
//! `u_l ∈ B^{2,l}`, state energies, soliton detection and labels, and the
//! two-soliton scattering experiment.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::a_type::{self, ARMatrix, ARect, Rect};
use crate::crystal::FiniteCrystal;
use crate::error::{Error, Result};
use crate::kr_b2::KrB2;
use crate::letter::{word_e, word_f, Letter};
use crate::one_row::OneRow;
use crate::rmatrix::{r_aff, r_b11_b21, r_one_row, RB2};
use crate::tableau::TwoRowTableau;

/// A finite state `b_1 ⊗ ... ⊗ b_L` of `B^{2,1}` cells.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ScaState {
    pub n: usize,
    pub cells: Vec<TwoRowTableau>,
}

pub fn vacuum_cell(n: usize) -> TwoRowTableau {
    TwoRowTableau::highest(n, 1)
}

/// All of `B^{2,1}`, the empty tableau included.
pub fn all_cells(n: usize) -> Result<Vec<TwoRowTableau>> {
    Ok(KrB2::new(n, 1)?.elements())
}

impl ScaState {
    pub fn new(n: usize, cells: Vec<TwoRowTableau>) -> Result<Self> {
        for c in &cells {
            if c.n() != n || c.width() > 1 || !c.is_valid() {
                return Err(Error::InvalidElement(format!("{c} is not a cell of B^{{2,1}} for n={n}")));
            }
        }
        Ok(ScaState { n, cells })
    }

    pub fn vacuum(n: usize, len: usize) -> Self {
        ScaState { n, cells: vec![vacuum_cell(n); len] }
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn is_vacuum(&self) -> bool {
        let u = vacuum_cell(self.n);
        self.cells.iter().all(|c| *c == u)
    }

    pub fn has_empty_cells(&self) -> bool {
        self.cells.iter().any(|c| c.is_empty())
    }

    /// Append `k` vacuum cells on the right.
    pub fn padded(&self, k: usize) -> Self {
        let mut cells = self.cells.clone();
        cells.extend(std::iter::repeat_n(vacuum_cell(self.n), k));
        ScaState { n: self.n, cells }
    }

    /// Number of trailing vacuum cells.
    pub fn right_vacuum(&self) -> usize {
        let u = vacuum_cell(self.n);
        self.cells.iter().rev().take_while(|c| **c == u).count()
    }

    /// Concatenated reading words; the classical crystal structure of the state.
    pub fn word(&self) -> Vec<Letter> {
        self.cells.iter().flat_map(|c| c.reading()).collect()
    }

    fn from_word_like(&self, w: &[Letter]) -> Self {
        let mut cells = Vec::with_capacity(self.len());
        let mut k = 0;
        for c in &self.cells {
            let l = 2 * c.width();
            cells.push(TwoRowTableau::from_reading(self.n, &w[k..k + l]));
            k += l;
        }
        ScaState { n: self.n, cells }
    }

    /// Classical `e_i`, `1 <= i <= n`.
    pub fn e(&self, i: usize) -> Option<Self> {
        word_e(i, &self.word()).map(|w| self.from_word_like(&w))
    }

    pub fn f(&self, i: usize) -> Option<Self> {
        word_f(i, &self.word()).map(|w| self.from_word_like(&w))
    }

    /// Two-line text: top letters, then bottom letters. Empty cells are `e`
    /// in both rows and are rejected unless `allow_empty`.
    pub fn parse(n: usize, text: &str, allow_empty: bool) -> Result<Self> {
        let lines: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
        if lines.len() != 2 {
            return Err(Error::Parse(format!("a state needs exactly two non-empty lines, got {}", lines.len())));
        }
        let top: Vec<&str> = lines[0].split_whitespace().collect();
        let bottom: Vec<&str> = lines[1].split_whitespace().collect();
        if top.len() != bottom.len() {
            return Err(Error::Parse(format!("rows have {} and {} cells", top.len(), bottom.len())));
        }
        let mut cells = Vec::with_capacity(top.len());
        for (k, (a, b)) in top.iter().zip(&bottom).enumerate() {
            let cell = match (*a, *b) {
                ("e", "e") if allow_empty => TwoRowTableau::empty(n),
                ("e", "e") => return Err(Error::Parse(format!("empty cell at position {k} is not allowed in a state"))),
                ("e", _) | (_, "e") => return Err(Error::Parse(format!("half-empty cell at position {k}"))),
                _ => {
                    let (x, y) = (Letter::parse(n, a)?, Letter::parse(n, b)?);
                    TwoRowTableau::new(n, vec![[x, y]]).map_err(|_| Error::Parse(format!("({x},{y}) at position {k} is not a column")))?
                }
            };
            cells.push(cell);
        }
        ScaState::new(n, cells)
    }

    /// Parse the cell strings of a JSON trace step (`"1/-3"`, `"e"`).
    pub fn from_cell_strings(n: usize, cells: &[String]) -> Result<Self> {
        let cells = cells.iter().map(|c| TwoRowTableau::parse(n, c)).collect::<Result<Vec<_>>>()?;
        ScaState::new(n, cells)
    }

    pub fn cell_strings(&self) -> Vec<String> {
        self.cells.iter().map(|c| c.to_string()).collect()
    }
}

impl fmt::Display for ScaState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tok = |c: &TwoRowTableau, r: usize| if c.is_empty() { "e".to_string() } else { c.at(r + 1, 1).to_string() };
        let mut top = Vec::with_capacity(self.len());
        let mut bottom = Vec::with_capacity(self.len());
        for c in &self.cells {
            let (a, b) = (tok(c, 0), tok(c, 1));
            let w = a.len().max(b.len());
            top.push(format!("{a:>w$}"));
            bottom.push(format!("{b:>w$}"));
        }
        writeln!(f, "{}", top.join(" "))?;
        write!(f, "{}", bottom.join(" "))
    }
}

impl fmt::Debug for ScaState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cell_strings().join(" "))
    }
}

/// Result of one carrier sweep without the boundary check.
#[derive(Clone, Debug)]
pub struct Sweep {
    pub state: ScaState,
    pub carrier: TwoRowTableau,
    /// `-Σ H(u^{(i)} ⊗ b_{i+1})`.
    pub energy: i64,
}

/// Evolution engine for a fixed rank; caches one R-matrix per carrier capacity.
pub struct Automaton {
    pub n: usize,
    carriers: Mutex<HashMap<usize, Arc<RB2>>>,
}

impl Automaton {
    pub fn new(n: usize) -> Result<Self> {
        if n < 4 {
            return Err(Error::Precondition(format!("need n >= 4, got {n}")));
        }
        Ok(Automaton { n, carriers: Mutex::new(HashMap::new()) })
    }

    pub fn r_matrix(&self, l: usize) -> Result<Arc<RB2>> {
        if let Some(r) = self.carriers.lock().unwrap().get(&l) {
            return Ok(r.clone());
        }
        let r = Arc::new(RB2::new(self.n, l)?);
        self.carriers.lock().unwrap().insert(l, r.clone());
        Ok(r)
    }

    fn check_rank(&self, p: &ScaState) -> Result<()> {
        if p.n != self.n {
            return Err(Error::Precondition(format!("state has n={} but the automaton has n={}", p.n, self.n)));
        }
        Ok(())
    }

    /// Sweep `u_l` through `p` from the left.
    pub fn sweep(&self, p: &ScaState, l: usize) -> Result<Sweep> {
        self.check_rank(p)?;
        let r = self.r_matrix(l)?;
        let mut carrier = TwoRowTableau::highest(self.n, l);
        let mut cells = Vec::with_capacity(p.len());
        let mut energy = 0;
        for b in &p.cells {
            let (cell, next, h) = r.apply_with_energy(&carrier, b)?;
            cells.push(cell);
            carrier = next;
            energy -= h;
        }
        Ok(Sweep { state: ScaState { n: self.n, cells }, carrier, energy })
    }

    /// `T_l(p)`; fails if the carrier does not come back as `u_l`.
    pub fn evolve(&self, p: &ScaState, l: usize) -> Result<ScaState> {
        let s = self.sweep(p, l)?;
        if s.carrier != TwoRowTableau::highest(self.n, l) {
            return Err(Error::Boundary(s.carrier.to_string()));
        }
        Ok(s.state)
    }

    /// `E_l(p)`.
    pub fn state_energy(&self, p: &ScaState, l: usize) -> Result<i64> {
        let s = self.sweep(p, l)?;
        if s.carrier != TwoRowTableau::highest(self.n, l) {
            return Err(Error::Boundary(s.carrier.to_string()));
        }
        Ok(s.energy)
    }

    /// `T_♮(p)` and the emitted letter `b(p)`, from a carrier `1 ∈ B^{1,1}`.
    pub fn evolve_natural(&self, p: &ScaState) -> Result<(ScaState, Letter)> {
        self.check_rank(p)?;
        let mut x = Letter::of(self.n, 1);
        let mut cells = Vec::with_capacity(p.len());
        for b in &p.cells {
            let (cell, next) = r_b11_b21(x, b)?;
            cells.push(cell);
            x = next;
        }
        Ok((ScaState { n: self.n, cells }, x))
    }

    /// Undo a sweep: replay `R^{-1}` from the right, starting from the carrier that left.
    pub fn unsweep(&self, q: &ScaState, l: usize, carrier_out: &TwoRowTableau) -> Result<(ScaState, TwoRowTableau)> {
        self.check_rank(q)?;
        let r = self.r_matrix(l)?;
        let mut carrier = carrier_out.clone();
        let mut cells = vec![TwoRowTableau::empty(self.n); q.len()];
        for (k, b) in q.cells.iter().enumerate().rev() {
            let (prev, cell) = r.inverse(b, &carrier)?;
            cells[k] = cell;
            carrier = prev;
        }
        Ok((ScaState { n: self.n, cells }, carrier))
    }

    /// `p, T_l p, ..., T_l^steps p` with the energies `E_l` of each state.
    pub fn trace(&self, p: &ScaState, l: usize, steps: usize) -> Result<Trace> {
        let mut out = Vec::with_capacity(steps + 1);
        let mut cur = p.clone();
        let u = TwoRowTableau::highest(self.n, l);
        for t in 0..=steps {
            let s = self.sweep(&cur, l)?;
            let closed = s.carrier == u;
            if !closed && t < steps {
                return Err(Error::Boundary(format!("{} (at t={t})", s.carrier)));
            }
            out.push(TraceStep { t, state: cur, energy: closed.then_some(s.energy) });
            cur = s.state;
        }
        Ok(Trace { n: self.n, carrier: l, steps: out })
    }
}

#[derive(Clone, Debug)]
pub struct TraceStep {
    pub t: usize,
    pub state: ScaState,
    /// `E_l` of the state; `None` when the state is too close to the boundary to
    /// take another step.
    pub energy: Option<i64>,
}

#[derive(Clone, Debug)]
pub struct Trace {
    pub n: usize,
    pub carrier: usize,
    pub steps: Vec<TraceStep>,
}

#[derive(Serialize, Deserialize)]
struct TraceJson {
    n: usize,
    #[serde(rename = "L")]
    len: usize,
    carrier: usize,
    steps: Vec<StepJson>,
}

#[derive(Serialize, Deserialize)]
struct StepJson {
    t: usize,
    cells: Vec<String>,
    energy: Option<i64>,
}

impl Trace {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for st in &self.steps {
            let e = st.energy.map_or("-".to_string(), |e| e.to_string());
            s.push_str(&format!("t={} E={e}\n{}\n", st.t, st.state));
        }
        s
    }

    pub fn to_json(&self) -> String {
        let j = TraceJson {
            n: self.n,
            len: self.steps.first().map_or(0, |s| s.state.len()),
            carrier: self.carrier,
            steps: self
                .steps
                .iter()
                .map(|s| StepJson { t: s.t, cells: s.state.cell_strings(), energy: s.energy })
                .collect(),
        };
        serde_json::to_string_pretty(&j).expect("trace serialises")
    }

    pub fn from_json(text: &str) -> Result<Trace> {
        let j: TraceJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let mut steps = Vec::with_capacity(j.steps.len());
        for s in j.steps {
            let state = ScaState::from_cell_strings(j.n, &s.cells)?;
            if state.len() != j.len {
                return Err(Error::Parse(format!("step t={} has {} cells, expected {}", s.t, state.len(), j.len)));
            }
            steps.push(TraceStep { t: s.t, state, energy: s.energy });
        }
        Ok(Trace { n: j.n, carrier: j.carrier, steps })
    }
}

/// One factor of a soliton label.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum LabelPart {
    /// An element of `B^{r,s}` of type `A_m^(1)`.
    A { m: usize, t: Rect },
    /// An element of `B^{1,s}` of type `D_{n-2}^(1)`.
    D(OneRow),
}

impl fmt::Debug for LabelPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LabelPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LabelPart::A { m, t } => {
                let rows: Vec<String> = t
                    .coords(m + 1)
                    .iter()
                    .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
                    .collect();
                write!(f, "({})", rows.join("/"))
            }
            LabelPart::D(b) => write!(f, "({b})"),
        }
    }
}

/// The label of a soliton of length `s`.
///
/// n=4: three `A_1` rows `(T, X, Y)`; `T` is the top row of the cells.
/// n=5: an `A_1` row and a two-row `A_3` rectangle.
/// n>5: an `A_1` row and a one-row `D_{n-2}` element.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SolitonLabel {
    pub n: usize,
    pub s: usize,
    pub parts: Vec<LabelPart>,
}

impl fmt::Display for SolitonLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p: Vec<String> = self.parts.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", p.join(","))
    }
}

impl fmt::Debug for SolitonLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn a1(x1: u32, x2: u32) -> LabelPart {
    LabelPart::A { m: 1, t: Rect::from_coords(&[vec![x1, x2]]).expect("one row is semistandard") }
}

fn a1_coords(p: &LabelPart, s: usize) -> Result<(u32, u32)> {
    match p {
        LabelPart::A { m: 1, t } if t.r() == 1 && t.s() == s => {
            let c = &t.coords(2)[0];
            Ok((c[0], c[1]))
        }
        _ => Err(Error::InvalidElement(format!("{p} is not in B^{{1,{s}}} of type A_1"))),
    }
}

/// The two-row columns of `A_3` and the letters of `D_5` they stand for.
const N5_DICT: [((u8, u8), i32); 6] = [((1, 2), 3), ((1, 3), 4), ((2, 3), 5), ((1, 4), -5), ((2, 4), -4), ((3, 4), -3)];

impl SolitonLabel {
    pub fn new(n: usize, s: usize, parts: Vec<LabelPart>) -> Result<Self> {
        let l = SolitonLabel { n, s, parts };
        l.cells()?;
        Ok(l)
    }

    /// Build from coordinate vectors as printed: `A` parts as rows of counts, `D` part
    /// as `(x_1..x_m, x̄_m..x̄_1)`.
    pub fn from_coords(n: usize, parts: &[Vec<Vec<u32>>]) -> Result<Self> {
        let s = parts.first().and_then(|p| p.first()).map_or(0, |r| r.iter().sum::<u32>()) as usize;
        let mut out = Vec::new();
        for (k, p) in parts.iter().enumerate() {
            let d_part = n > 5 && k == 1;
            if d_part {
                out.push(LabelPart::D(OneRow::from_coords(n - 2, s, p[0].clone())?));
            } else {
                let m = p[0].len() - 1;
                out.push(LabelPart::A { m, t: Rect::from_coords(p)? });
            }
        }
        SolitonLabel::new(n, s, out)
    }

    /// `i_s`: the cells of the soliton, left to right.
    pub fn cells(&self) -> Result<Vec<TwoRowTableau>> {
        let (n, s) = (self.n, self.s);
        let bad = || Error::InvalidElement(format!("{self} is not a soliton label for n={n}, s={s}"));
        let expected = if n == 4 { 3 } else { 2 };
        if self.parts.len() != expected || s == 0 {
            return Err(bad());
        }
        let (x1, x2) = a1_coords(&self.parts[0], s)?;
        // bottom letters, weakly decreasing left to right
        let bottom: Vec<i32> = match n {
            4 => {
                let (p1, _) = a1_coords(&self.parts[1], s)?;
                let (q1, _) = a1_coords(&self.parts[2], s)?;
                let (p1, q1) = (p1 as usize, q1 as usize);
                let mut v = vec![-3; s - p1.max(q1)];
                v.extend(std::iter::repeat_n(-4, p1.saturating_sub(q1)));
                v.extend(std::iter::repeat_n(4, q1.saturating_sub(p1)));
                v.extend(std::iter::repeat_n(3, p1.min(q1)));
                v
            }
            5 => {
                let t = match &self.parts[1] {
                    LabelPart::A { m: 3, t } if t.r() == 2 && t.s() == s && t.is_semistandard() => t,
                    _ => return Err(bad()),
                };
                let mut v = Vec::with_capacity(s);
                for j in (0..s).rev() {
                    let col = (t.rows[0][j], t.rows[1][j]);
                    let (_, l) = N5_DICT.iter().find(|(c, _)| *c == col).ok_or_else(bad)?;
                    v.push(*l);
                }
                v
            }
            _ => {
                let b = match &self.parts[1] {
                    LabelPart::D(b) if b.n() == n - 2 && b.len() == s => b,
                    _ => return Err(bad()),
                };
                b.letters()
                    .iter()
                    .rev()
                    .map(|l| {
                        let v = l.value();
                        v + 2 * v.signum()
                    })
                    .collect()
            }
        };
        let top = std::iter::repeat_n(2, x2 as usize).chain(std::iter::repeat_n(1, x1 as usize));
        top.zip(bottom)
            .map(|(a, b)| TwoRowTableau::from_values(n, &[(a, b)]))
            .collect()
    }

    /// `i_s^{-1}`; `None` unless `cells` is a single soliton pattern.
    pub fn from_cells(n: usize, cells: &[TwoRowTableau]) -> Option<SolitonLabel> {
        let s = cells.len();
        if s == 0 || cells.iter().any(|c| c.width() != 1) {
            return None;
        }
        let top: Vec<i32> = cells.iter().map(|c| c.at(1, 1).value()).collect();
        let bottom: Vec<Letter> = cells.iter().map(|c| c.at(2, 1)).collect();
        let x2 = top.iter().take_while(|&&v| v == 2).count();
        if top[x2..].iter().any(|&v| v != 1) {
            return None;
        }
        if bottom.iter().any(|b| b.abs() <= 2) || bottom.windows(2).any(|w| !w[0].ge(w[1])) {
            return None;
        }
        let x1 = s - x2;
        let head = a1(x1 as u32, x2 as u32);
        let parts = match n {
            4 => {
                let cnt = |v: i32| bottom.iter().filter(|b| b.value() == v).count();
                let (hi, lo) = (s - cnt(-3), cnt(3));
                let (p1, q1) = if cnt(-4) > 0 { (hi, lo) } else { (lo, hi) };
                vec![head, a1(p1 as u32, (s - p1) as u32), a1(q1 as u32, (s - q1) as u32)]
            }
            5 => {
                let mut rows = vec![Vec::with_capacity(s), Vec::with_capacity(s)];
                for b in bottom.iter().rev() {
                    let ((i, j), _) = N5_DICT.iter().find(|(_, l)| *l == b.value())?;
                    rows[0].push(*i);
                    rows[1].push(*j);
                }
                let t = Rect { rows };
                if !t.is_semistandard() {
                    return None;
                }
                vec![head, LabelPart::A { m: 3, t }]
            }
            _ => {
                let letters: Vec<Letter> = bottom
                    .iter()
                    .rev()
                    .map(|b| {
                        let v = b.value();
                        Letter::of(n - 2, v - 2 * v.signum())
                    })
                    .collect();
                vec![head, LabelPart::D(OneRow::from_letters(n - 2, &letters).ok()?)]
            }
        };
        Some(SolitonLabel { n, s, parts })
    }

    /// Every label of length `s` (exhaustive; keep `s` small).
    pub fn all(n: usize, s: usize) -> Result<Vec<SolitonLabel>> {
        let heads: Vec<LabelPart> = (0..=s as u32).map(|x1| a1(x1, s as u32 - x1)).collect();
        let tails: Vec<Vec<LabelPart>> = match n {
            4 => {
                let mut v = Vec::new();
                for p in 0..=s as u32 {
                    for q in 0..=s as u32 {
                        v.push(vec![a1(p, s as u32 - p), a1(q, s as u32 - q)]);
                    }
                }
                v
            }
            5 => ARect::new(3, 2, s)?.elements().into_iter().map(|t| vec![LabelPart::A { m: 3, t }]).collect(),
            _ => crate::one_row::OneRowCrystal { n: n - 2, s }
                .elements()
                .into_iter()
                .map(|b| vec![LabelPart::D(b)])
                .collect(),
        };
        let mut out = Vec::new();
        for h in &heads {
            for t in &tails {
                let mut parts = vec![h.clone()];
                parts.extend(t.iter().cloned());
                out.push(SolitonLabel { n, s, parts });
            }
        }
        Ok(out)
    }
}

/// The combinatorial R-matrix of the label algebra, factor by factor, with the summed
/// energy `Ĥ`. Returns `(b̃', b̃, Ĥ)` for `b ⊗ b'`.
pub fn label_r(a: &SolitonLabel, b: &SolitonLabel) -> Result<(SolitonLabel, SolitonLabel, i64)> {
    if a.n != b.n || a.parts.len() != b.parts.len() {
        return Err(Error::Precondition("labels of different shape".into()));
    }
    let mut left = Vec::new();
    let mut right = Vec::new();
    let mut h = 0;
    for (x, y) in a.parts.iter().zip(&b.parts) {
        match (x, y) {
            (LabelPart::A { m, t }, LabelPart::A { m: m2, t: t2 }) if m == m2 => {
                let r = ARMatrix::new(ARect::new(*m, t.r(), t.s())?, ARect::new(*m, t2.r(), t2.s())?)?;
                let (u, v) = r.apply(t, t2)?;
                h += a_type::energy(t, t2);
                left.push(LabelPart::A { m: *m, t: u });
                right.push(LabelPart::A { m: *m, t: v });
            }
            (LabelPart::D(u), LabelPart::D(v)) => {
                let (p, q, e) = r_one_row(u, v)?;
                h += e;
                left.push(LabelPart::D(p));
                right.push(LabelPart::D(q));
            }
            _ => return Err(Error::Precondition(format!("mismatched label factors {x} and {y}"))),
        }
    }
    Ok((
        SolitonLabel { n: a.n, s: b.s, parts: left },
        SolitonLabel { n: a.n, s: a.s, parts: right },
        h,
    ))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Soliton {
    /// Number of cells strictly left of the soliton.
    pub position: usize,
    pub label: SolitonLabel,
}

impl Soliton {
    pub fn len(&self) -> usize {
        self.label.s
    }

    pub fn is_empty(&self) -> bool {
        self.label.s == 0
    }
}

/// Split `p` into solitons separated by vacuum; fails on anything else
/// (for instance while two solitons are colliding).
pub fn detect_solitons(p: &ScaState) -> Result<Vec<Soliton>> {
    let u = vacuum_cell(p.n);
    let mut out = Vec::new();
    let mut k = 0;
    while k < p.len() {
        if p.cells[k] == u {
            k += 1;
            continue;
        }
        let start = k;
        while k < p.len() && p.cells[k] != u {
            k += 1;
        }
        let run = &p.cells[start..k];
        let label = SolitonLabel::from_cells(p.n, run).ok_or_else(|| {
            let cells: Vec<String> = run.iter().map(|c| c.to_string()).collect();
            Error::Detection(format!("cells {start}..{k} ({}) are not a soliton", cells.join(" ")))
        })?;
        out.push(Soliton { position: start, label });
    }
    Ok(out)
}

/// Exponent of `z` for a soliton of length `s` at position `gamma` after `t` steps of `T_r`.
pub fn mode(r: usize, s: usize, t: usize, gamma: usize) -> i64 {
    (r.min(s) * t) as i64 - gamma as i64
}

/// A state with the given solitons; `gaps[k]` vacuum cells precede soliton `k`
/// and `tail` follow the last one.
pub fn soliton_state(n: usize, labels: &[SolitonLabel], gaps: &[usize], tail: usize) -> Result<ScaState> {
    if labels.len() != gaps.len() {
        return Err(Error::Precondition("one gap per soliton".into()));
    }
    let u = vacuum_cell(n);
    let mut cells = Vec::new();
    for (l, &g) in labels.iter().zip(gaps) {
        cells.extend(std::iter::repeat_n(u.clone(), g));
        cells.extend(l.cells()?);
    }
    cells.extend(std::iter::repeat_n(u, tail));
    ScaState::new(n, cells)
}

#[derive(Clone, Debug)]
pub struct ScatterReport {
    pub n: usize,
    pub carrier: usize,
    /// `(mode, label)` of the left and right soliton at `t=0`.
    pub initial: [(i64, SolitonLabel); 2],
    /// Observed after separation, left to right.
    pub observed: [(i64, SolitonLabel); 2],
    /// `R^Aff` of the initial pair with the shifted energy.
    pub predicted: [(i64, SolitonLabel); 2],
    pub h_hat: i64,
    pub h_tilde: i64,
    /// First time at which the separation criterion held.
    pub t_separated: usize,
    /// `k'_2 - k_2`, where `k = -mode`.
    pub phase_shift: i64,
    pub states: Vec<ScaState>,
}

impl ScatterReport {
    pub fn matches(&self) -> bool {
        self.observed == self.predicted
    }
}

impl fmt::Display for ScatterReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pair = |p: &[(i64, SolitonLabel); 2]| format!("z^{} {} ⊗ z^{} {}", p[0].0, p[0].1, p[1].0, p[1].1);
        writeln!(f, "n={} carrier={}", self.n, self.carrier)?;
        writeln!(f, "initial   {}", pair(&self.initial))?;
        writeln!(f, "observed  {} (t={})", pair(&self.observed), self.t_separated)?;
        writeln!(f, "predicted {}", pair(&self.predicted))?;
        write!(
            f,
            "H^={} H~={} phase shift={} match={}",
            self.h_hat,
            self.h_tilde,
            self.phase_shift,
            self.matches()
        )
    }
}

fn two_clean(p: &ScaState, lens: (usize, usize)) -> Option<[Soliton; 2]> {
    let v = detect_solitons(p).ok()?;
    if v.len() != 2 || v[0].len() != lens.0 || v[1].len() != lens.1 {
        return None;
    }
    let mut it = v.into_iter();
    Some([it.next()?, it.next()?])
}

impl Automaton {
    /// Evolve a two-soliton state `[s_1] [s_2]`, `s_1 > s_2`, under `T_r` until the
    /// solitons have passed through each other, and compare with `R^Aff`.
    /// The state is padded on the right so that nothing reaches the boundary.
    pub fn scatter_experiment(&self, p: &ScaState, r: usize, t_max: usize) -> Result<ScatterReport> {
        let init = detect_solitons(p)?;
        if init.len() != 2 {
            return Err(Error::Precondition(format!("expected two solitons, found {}", init.len())));
        }
        let (s1, s2) = (init[0].len(), init[1].len());
        if s1 <= s2 {
            return Err(Error::Precondition(format!("the left soliton must be longer ({s1} vs {s2})")));
        }
        if r <= s2 {
            return Err(Error::Precondition(format!("carrier {r} must exceed the shorter length {s2}")));
        }
        let need = (s1 + s2) * (t_max + 1);
        let q = p.padded(need.saturating_sub(p.right_vacuum()));
        let initial = [(mode(r, s1, 0, init[0].position), init[0].label.clone()), (mode(r, s2, 0, init[1].position), init[1].label.clone())];
        let (b2t, b1t, h_hat) = label_r(&init[0].label, &init[1].label)?;
        let h_tilde = 2 * s1.min(s2) as i64 + h_hat;
        let (x, y) = r_aff(initial[0].0, initial[1].0, (b2t, b1t), h_tilde);
        let predicted = [x, y];

        let mut states = vec![q.clone()];
        let mut prev: Option<[Soliton; 2]> = None;
        let mut cur = q;
        for t in 1..=t_max {
            cur = self.evolve(&cur, r)?;
            states.push(cur.clone());
            let now = two_clean(&cur, (s2, s1));
            if let (Some(a), Some(b)) = (&prev, &now) {
                let stable = (0..2).all(|k| a[k].label == b[k].label && b[k].position == a[k].position + r.min(b[k].len()));
                if stable {
                    let observed = [
                        (mode(r, s2, t, b[0].position), b[0].label.clone()),
                        (mode(r, s1, t, b[1].position), b[1].label.clone()),
                    ];
                    let phase_shift = initial[1].0 - observed[0].0;
                    return Ok(ScatterReport {
                        n: self.n,
                        carrier: r,
                        initial,
                        observed,
                        predicted,
                        h_hat,
                        h_tilde,
                        t_separated: t,
                        phase_shift,
                        states,
                    });
                }
            }
            prev = now;
        }
        Err(Error::Detection(format!("solitons did not separate within {t_max} steps")))
    }
}

/// Parse a file of `t=k` headed two-line states.
pub fn parse_trace_text(n: usize, text: &str) -> Result<Vec<ScaState>> {
    let mut out = Vec::new();
    let mut buf: Vec<&str> = Vec::new();
    let flush = |buf: &mut Vec<&str>, out: &mut Vec<ScaState>| -> Result<()> {
        if !buf.is_empty() {
            out.push(ScaState::parse(n, &buf.join("\n"), true)?);
            buf.clear();
        }
        Ok(())
    };
    for line in text.lines().map(str::trim) {
        if line.is_empty() {
            continue;
        }
        if line.starts_with("t=") {
            flush(&mut buf, &mut out)?;
        } else {
            buf.push(line);
        }
    }
    flush(&mut buf, &mut out)?;
    Ok(out)
}

/// Random states for property checks: a window of random cells (each non-vacuum
/// with probability `density`) followed by `tail` vacuum cells.
pub fn sample_state<R: rand::Rng>(n: usize, window: usize, tail: usize, density: f64, rng: &mut R) -> Result<ScaState> {
    let cells = all_cells(n)?;
    let u = vacuum_cell(n);
    let mut out = Vec::with_capacity(window + tail);
    for _ in 0..window {
        if rng.gen_bool(density) {
            out.push(cells[rng.gen_range(0..cells.len())].clone());
        } else {
            out.push(u.clone());
        }
    }
    out.extend(std::iter::repeat_n(u, tail));
    ScaState::new(n, out)
}

/// The two-soliton scattering traces shipped with the crate: 27 cells, carrier
/// capacity equal to the longer soliton, `t = 0..7` for n=4 and `t = 0..4` for n=5, 6.
pub fn reference_trace(n: usize) -> Option<Vec<ScaState>> {
    let text = match n {
        4 => include_str!("../data/reference_n4.txt"),
        5 => include_str!("../data/reference_n5.txt"),
        6 => include_str!("../data/reference_n6.txt"),
        _ => return None,
    };
    Some(parse_trace_text(n, text).expect("bundled trace parses"))
}

/// Carrier capacity used for the bundled trace of rank `n`.
pub fn reference_carrier(n: usize) -> Option<usize> {
    match n {
        4 => Some(3),
        5 => Some(4),
        6 => Some(5),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn printed(n: usize) -> Vec<ScaState> {
        reference_trace(n).unwrap()
    }

    #[test]
    fn printed_traces_need_a_carrier_at_least_the_longer_length() {
        for (n, s1) in [(4, 3), (5, 4), (6, 5)] {
            let rows = printed(n);
            let a = Automaton::new(n).unwrap();
            for r in [s1, s1 + 2] {
                let mut cur = rows[0].clone();
                for (t, want) in rows.iter().enumerate().skip(1) {
                    cur = a.evolve(&cur, r).unwrap();
                    assert_eq!(cur, *want, "n={n} r={r} t={t}");
                }
            }
            assert_ne!(a.evolve(&rows[0], s1 - 1).ok().as_ref(), Some(&rows[1]));
        }
    }

    fn scatter(n: usize, r: usize, t_max: usize) -> ScatterReport {
        let a = Automaton::new(n).unwrap();
        a.scatter_experiment(&printed(n)[0], r, t_max).unwrap()
    }

    #[test]
    fn scattering_n4() {
        let rep = scatter(4, 3, 20);
        let l = |v: &[[u32; 2]; 3]| SolitonLabel::from_coords(4, &v.iter().map(|x| vec![x.to_vec()]).collect::<Vec<_>>()).unwrap();
        assert_eq!(rep.initial[0], (0, l(&[[3, 0], [2, 1], [0, 3]])));
        assert_eq!(rep.initial[1], (-5, l(&[[0, 2], [1, 1], [2, 0]])));
        assert_eq!(rep.observed[0], (-4, l(&[[2, 0], [1, 1], [0, 2]])));
        assert_eq!(rep.observed[1], (-1, l(&[[1, 2], [2, 1], [2, 1]])));
        assert!(rep.matches(), "{rep}");
        assert_eq!(rep.h_tilde, 1);
    }

    #[test]
    fn scattering_n5() {
        let rep = scatter(5, 4, 20);
        let l = |a: [u32; 2], b: [[u32; 4]; 2]| {
            SolitonLabel::from_coords(5, &[vec![a.to_vec()], vec![b[0].to_vec(), b[1].to_vec()]]).unwrap()
        };
        assert_eq!(rep.initial[0], (0, l([2, 2], [[2, 1, 1, 0], [0, 1, 2, 1]])));
        assert_eq!(rep.initial[1], (-6, l([1, 1], [[1, 1, 0, 0], [0, 0, 0, 2]])));
        assert_eq!(rep.predicted[0], (-5, l([1, 1], [[1, 1, 0, 0], [0, 0, 2, 0]])));
        assert_eq!(rep.predicted[1], (-1, l([2, 2], [[2, 1, 1, 0], [0, 1, 0, 3]])));
        assert!(rep.matches(), "{rep}");
    }

    #[test]
    fn scattering_n6() {
        let rep = scatter(6, 5, 20);
        let l = |a: [u32; 2], b: [u32; 8]| SolitonLabel::from_coords(6, &[vec![a.to_vec()], vec![b.to_vec()]]).unwrap();
        assert_eq!(rep.initial[0], (0, l([3, 2], [0, 1, 1, 1, 0, 1, 0, 1])));
        assert_eq!(rep.initial[1], (-7, l([0, 2], [0, 0, 0, 0, 0, 2, 0, 0])));
        assert_eq!(rep.predicted[0], (-7, l([2, 0], [0, 0, 0, 1, 0, 1, 0, 0])));
        assert_eq!(rep.predicted[1], (0, l([1, 4], [0, 2, 0, 0, 0, 1, 1, 1])));
        assert!(rep.matches(), "{rep}");
    }

    use crate::crystal::Crystal;
    use crate::one_row::OneRowCrystal;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn state_of(n: usize, label: &SolitonLabel) -> ScaState {
        ScaState::new(n, label.cells().unwrap()).unwrap()
    }

    #[test]
    fn i_s_is_a_bijection_onto_soliton_patterns() {
        for n in [4, 5, 6, 7] {
            for s in 1..=3 {
                let labels = SolitonLabel::all(n, s).unwrap();
                let mut seen = std::collections::HashSet::new();
                for l in &labels {
                    let cells = l.cells().unwrap();
                    assert_eq!(SolitonLabel::from_cells(n, &cells).as_ref(), Some(l), "n={n} {l}");
                    assert!(seen.insert(cells));
                }
                // every pattern of length s is hit
                let pool: Vec<_> = all_cells(n).unwrap().into_iter().filter(|c| c.width() == 1).collect();
                let mut count = 0;
                let mut word = vec![0usize; s];
                loop {
                    let cells: Vec<_> = word.iter().map(|&k| pool[k].clone()).collect();
                    if SolitonLabel::from_cells(n, &cells).is_some() {
                        count += 1;
                    }
                    let mut k = 0;
                    while k < s && word[k] + 1 == pool.len() {
                        word[k] = 0;
                        k += 1;
                    }
                    if k == s {
                        break;
                    }
                    word[k] += 1;
                }
                assert_eq!(count, labels.len(), "n={n} s={s}");
            }
        }
    }

    #[test]
    fn n5_dictionary_and_n4_extreme() {
        let l = SolitonLabel::from_coords(5, &[vec![vec![1, 0]], vec![vec![1, 0, 0, 0], vec![0, 0, 0, 1]]]).unwrap();
        assert_eq!(l.cells().unwrap(), vec![TwoRowTableau::from_values(5, &[(1, -5)]).unwrap()]);
        let s = 3;
        let l = SolitonLabel::from_coords(4, &[vec![vec![3, 0]], vec![vec![3, 0]], vec![vec![3, 0]]]).unwrap();
        let bottom: Vec<i32> = l.cells().unwrap().iter().map(|c| c.at(2, 1).value()).collect();
        assert_eq!(bottom, vec![3; s]);
    }

    /// Relabelling of the classical nodes of each label factor inside `D_n`.
    fn node_maps(n: usize) -> Vec<Vec<(usize, usize)>> {
        match n {
            4 => vec![vec![(1, 1)], vec![(1, 3)], vec![(1, 4)]],
            5 => vec![vec![(1, 1)], vec![(1, 4), (2, 3), (3, 5)]],
            _ => vec![vec![(1, 1)], (1..=n - 2).map(|i| (i, i + 2)).collect()],
        }
    }

    fn part_e(part: &LabelPart, i: usize, s: usize) -> Option<LabelPart> {
        match part {
            LabelPart::A { m, t } => ARect::new(*m, t.r(), s).unwrap().e(i, t).map(|t| LabelPart::A { m: *m, t }),
            LabelPart::D(b) => OneRowCrystal { n: b.n(), s }.e(i, b).map(LabelPart::D),
        }
    }

    #[test]
    fn i_s_intertwines_the_label_crystals() {
        for n in [4, 5, 6] {
            for s in 1..=2 {
                for l in SolitonLabel::all(n, s).unwrap() {
                    let p = state_of(n, &l);
                    for (k, nodes) in node_maps(n).iter().enumerate() {
                        for &(i, j) in nodes {
                            let via_label = part_e(&l.parts[k], i, s).map(|q| {
                                let mut parts = l.parts.clone();
                                parts[k] = q;
                                state_of(n, &SolitonLabel { n, s, parts })
                            });
                            assert_eq!(p.e(j), via_label, "n={n} {l} factor {k} e_{i} vs e_{j}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn vacuum_is_stationary() {
        for n in [4, 5] {
            let a = Automaton::new(n).unwrap();
            let v = ScaState::vacuum(n, 10);
            for l in 1..=3 {
                assert_eq!(a.evolve(&v, l).unwrap(), v);
                assert_eq!(a.state_energy(&v, l).unwrap(), 0);
            }
            assert_eq!(a.evolve_natural(&v).unwrap(), (v.clone(), Letter::of(n, 1)));
            assert!(detect_solitons(&v).unwrap().is_empty());
        }
    }

    #[test]
    fn one_soliton_speed_and_energy() {
        for n in [4, 5, 6] {
            let a = Automaton::new(n).unwrap();
            for s in 1..=3 {
                for l in SolitonLabel::all(n, s).unwrap().into_iter().step_by(7) {
                    for k in 1..=4 {
                        let mut p = soliton_state(n, std::slice::from_ref(&l), &[2], 2 + 5 * s).unwrap();
                        for t in 1..=4 {
                            assert_eq!(a.state_energy(&p, k).unwrap(), k.min(s) as i64);
                            p = a.evolve(&p, k).unwrap();
                            let d = detect_solitons(&p).unwrap();
                            assert_eq!(d.len(), 1);
                            assert_eq!(d[0].position, 2 + t * k.min(s), "n={n} {l} k={k}");
                            assert_eq!(d[0].label, l);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn natural_evolution_on_one_soliton() {
        let n = 5;
        let a = Automaton::new(n).unwrap();
        for s in 1..=3 {
            for l in SolitonLabel::all(n, s).unwrap() {
                let p = soliton_state(n, std::slice::from_ref(&l), &[1], 3).unwrap();
                let (q, b) = a.evolve_natural(&p).unwrap();
                let (x1, x2) = a1_coords(&l.parts[0], s).unwrap();
                if x2 == 0 {
                    assert_eq!((q, b.value()), (p, 1), "{l}");
                } else {
                    assert_eq!(b.value(), 2, "{l}");
                    let d = detect_solitons(&q).unwrap();
                    assert_eq!(d.len(), 1);
                    assert_eq!(d[0].position, 2, "{l}");
                    assert_eq!(a1_coords(&d[0].label.parts[0], s).unwrap(), (x1 + 1, x2 - 1));
                    assert_eq!(d[0].label.parts[1..], l.parts[1..]);
                }
            }
        }
    }

    #[test]
    fn energy_one_characterises_single_solitons() {
        let n = 4;
        let len = 6;
        let a = Automaton::new(n).unwrap();
        let cells = all_cells(n).unwrap();
        let u = vacuum_cell(n);
        let others: Vec<_> = cells.iter().filter(|c| **c != u).cloned().collect();
        let mut checked = 0;
        for i in 0..len - 1 {
            for j in i..len - 1 {
                for x in &others {
                    for y in &others {
                        if i == j && x != y {
                            continue;
                        }
                        let mut p = ScaState::vacuum(n, len);
                        p.cells[i] = x.clone();
                        p.cells[j] = y.clone();
                        let one = matches!(detect_solitons(&p).as_deref(), Ok([_]));
                        assert_eq!(a.state_energy(&p, 1).unwrap() == 1, one, "{p:?}");
                        checked += 1;
                    }
                }
            }
        }
        assert!(checked > 1000);
    }

    #[test]
    fn sweeps_are_reversible() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let a = Automaton::new(4).unwrap();
        for _ in 0..50 {
            let p = sample_state(4, 8, 4, 0.4, &mut rng).unwrap();
            for l in 1..=3 {
                let sw = a.sweep(&p, l).unwrap();
                let (back, c) = a.unsweep(&sw.state, l, &sw.carrier).unwrap();
                assert_eq!(back, p);
                assert_eq!(c, TwoRowTableau::highest(4, l));
            }
        }
    }

    #[test]
    fn text_and_json_round_trip() {
        let rows = printed(4);
        let a = Automaton::new(4).unwrap();
        let tr = a.trace(&rows[0], 3, 7).unwrap();
        let back = Trace::from_json(&tr.to_json()).unwrap();
        let states: Vec<_> = back.steps.iter().map(|s| s.state.clone()).collect();
        assert_eq!(states, rows);
        for r in &rows {
            assert_eq!(&ScaState::parse(4, &r.to_string(), true).unwrap(), r);
        }
        assert!(ScaState::parse(4, "1 e\n2 e", false).is_err());
        assert!(ScaState::parse(4, "1 e\n2 e", true).unwrap().has_empty_cells());
    }

    #[test]
    fn commutations_on_sampled_states() {
        for n in [4, 5] {
            let a = Automaton::new(n).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
            let mut good = 0;
            while good < 40 {
                let p = sample_state(n, 6, 8, 0.4, &mut rng).unwrap();
                let r = 2;
                let Ok(tp) = a.evolve(&p, r) else { continue };
                let (np, _) = a.evolve_natural(&p).unwrap();
                let Ok(tnp) = a.evolve(&np, r) else { continue };
                assert_eq!(a.evolve_natural(&tp).unwrap().0, tnp);
                let e = a.state_energy(&p, r).unwrap();
                for i in (1..=n).filter(|&i| i != 2) {
                    if let Some(q) = p.e(i) {
                        assert_eq!(a.evolve(&q, r).unwrap(), tp.e(i).unwrap());
                        assert_eq!(a.state_energy(&q, r).unwrap(), e);
                    }
                }
                good += 1;
            }
        }
    }

    #[test]
    fn emitted_letter_passes_through_the_carrier() {
        use crate::letter::LetterCrystal;
        use crate::rmatrix::brute_force_r;
        let n = 4;
        let a = Automaton::new(n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for l in 1..=2 {
            let kr = KrB2::new(n, l).unwrap();
            let r = brute_force_r(&kr, &LetterCrystal { n }, &kr.highest(), &Letter::of(n, 1)).unwrap();
            let mut good = 0;
            while good < 30 {
                let p = sample_state(n, 6, 8, 0.4, &mut rng).unwrap();
                let Ok(tp) = a.evolve(&p, l) else { continue };
                let (_, b) = a.evolve_natural(&p).unwrap();
                let (_, bt) = a.evolve_natural(&tp).unwrap();
                assert_eq!(r[&(kr.highest(), b)], (bt, kr.highest()), "{p:?}");
                good += 1;
            }
        }
    }
}
