//! Number-based strings: traversals of matrices, tokenwise operations, the
//! every-zero string family and the partition search that rebuilds matrices.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::topcode::{Column, TopcodeMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StringError {
    #[error("negative entry {0} cannot be written as a token")]
    Negative(i64),
    #[error("matrix shape: {0}")]
    Shape(String),
    #[error("length mismatch: {left} vs {right}")]
    Length { left: usize, right: usize },
    #[error("not a permutation of 0..{0}")]
    Permutation(usize),
    #[error("token {0} is not a single digit")]
    NotDigit(u64),
    #[error("cannot parse `{0}`")]
    Parse(String),
    #[error("index {index} out of range 1..={modulus}")]
    Index { index: usize, modulus: usize },
    #[error("q = {0} exceeds the limit 5")]
    QTooLarge(usize),
    #[error("search visited more than {0} cut vectors")]
    BoundExceeded(u64),
    #[error("mixed string must take values from both operands")]
    MixCondition,
    #[error("modulus must be positive")]
    Modulus,
}

/// A sequence of non-negative tokens. Single-digit tokens render concatenated;
/// otherwise tokens are comma-separated.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NumberString(Vec<u64>);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rendering {
    /// Token decimals concatenated; token boundaries are lost.
    Digits,
    /// Tokens separated by commas.
    Tokens,
}

impl NumberString {
    pub fn from_tokens(tokens: Vec<u64>) -> Self {
        NumberString(tokens)
    }

    pub fn from_digits(s: &str) -> Result<Self, StringError> {
        s.chars()
            .map(|c| c.to_digit(10).map(u64::from).ok_or_else(|| StringError::Parse(s.into())))
            .collect::<Result<_, _>>()
            .map(NumberString)
    }

    pub fn tokens(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_digit_form(&self) -> bool {
        self.0.iter().all(|&t| t <= 9)
    }

    /// Splits every token into its decimal digits.
    pub fn to_digit_form(&self) -> NumberString {
        NumberString(
            self.render(Rendering::Digits)
                .bytes()
                .map(|b| u64::from(b - b'0'))
                .collect(),
        )
    }

    pub fn render(&self, r: Rendering) -> String {
        let parts = self.0.iter().map(u64::to_string);
        match r {
            Rendering::Digits => parts.collect(),
            Rendering::Tokens => parts.collect::<Vec<_>>().join(","),
        }
    }

    pub fn reciprocal(&self) -> NumberString {
        NumberString(self.0.iter().rev().copied().collect())
    }

    /// Replaces each digit `d` by `9 - d`.
    pub fn digit_dual(&self) -> Result<NumberString, StringError> {
        self.0
            .iter()
            .map(|&t| if t <= 9 { Ok(9 - t) } else { Err(StringError::NotDigit(t)) })
            .collect::<Result<_, _>>()
            .map(NumberString)
    }

    /// Token multiset.
    pub fn token_counts(&self) -> BTreeMap<u64, usize> {
        let mut m = BTreeMap::new();
        for &t in &self.0 {
            *m.entry(t).or_insert(0) += 1;
        }
        m
    }
}

impl fmt::Display for NumberString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = if self.is_digit_form() { Rendering::Digits } else { Rendering::Tokens };
        f.write_str(&self.render(r))
    }
}

impl FromStr for NumberString {
    type Err = StringError;
    /// Comma- or space-separated tokens, or a plain digit string.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.contains([',', ' ']) {
            return s
                .split([',', ' '])
                .filter(|t| !t.is_empty())
                .map(|t| t.trim().parse().map_err(|_| StringError::Parse(s.into())))
                .collect::<Result<_, _>>()
                .map(NumberString);
        }
        NumberString::from_digits(s)
    }
}

/// Which of the four line-ways is followed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Way {
    One,
    Two,
    Three,
    Four,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Variant {
    Plain,
    /// First and last rows exchanged.
    Reciprocal,
    /// Column order reversed.
    Inverse,
}

/// A traversal such as `vo1`, `vo2-r` or `vo3-i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Traversal {
    pub way: Way,
    pub variant: Variant,
}

impl Traversal {
    pub const ALL: [Traversal; 12] = {
        let ways = [Way::One, Way::Two, Way::Three, Way::Four];
        let vars = [Variant::Plain, Variant::Reciprocal, Variant::Inverse];
        let mut out = [Traversal { way: Way::One, variant: Variant::Plain }; 12];
        let mut i = 0;
        while i < 12 {
            out[i] = Traversal { way: ways[i / 3], variant: vars[i % 3] };
            i += 1;
        }
        out
    };

    pub fn new(way: Way, variant: Variant) -> Self {
        Traversal { way, variant }
    }
}

impl fmt::Display for Traversal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = match self.way {
            Way::One => 1,
            Way::Two => 2,
            Way::Three => 3,
            Way::Four => 4,
        };
        let v = match self.variant {
            Variant::Plain => "",
            Variant::Reciprocal => "-r",
            Variant::Inverse => "-i",
        };
        write!(f, "vo{n}{v}")
    }
}

impl FromStr for Traversal {
    type Err = StringError;
    /// `vo1`, `vo1r`, `vo1-r`, `voI`, `voI-i`, ... (case-insensitive). A suffix
    /// without a dash is only read after an arabic digit.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || StringError::Parse(s.into());
        let t = s.to_ascii_lowercase();
        let rest = t.strip_prefix("vo").ok_or_else(bad)?;
        let (body, suffix) = match rest.split_once('-') {
            Some((b, x)) => (b, x),
            None if rest.len() == 2 && rest.as_bytes()[0].is_ascii_digit() => rest.split_at(1),
            None => (rest, ""),
        };
        let variant = match suffix {
            "" => Variant::Plain,
            "r" => Variant::Reciprocal,
            "i" => Variant::Inverse,
            _ => return Err(bad()),
        };
        let way = match body {
            "1" | "i" => Way::One,
            "2" | "ii" => Way::Two,
            "3" | "iii" => Way::Three,
            "4" | "iv" => Way::Four,
            _ => return Err(bad()),
        };
        Ok(Traversal { way, variant })
    }
}

fn serpentine_rows(m: usize, n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(m * n);
    for i in 0..m {
        for k in 0..n {
            out.push((i, if i % 2 == 0 { k } else { n - 1 - k }));
        }
    }
    out
}

fn serpentine_columns(m: usize, n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(m * n);
    for j in 0..n {
        for k in 0..m {
            out.push((if j % 2 == 0 { k } else { m - 1 - k }, j));
        }
    }
    out
}

fn column_major(m: usize, n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|j| (0..m).map(move |i| (i, j))).collect()
}

/// Anti-diagonals from the bottom-left corner, alternating direction.
fn zigzag(m: usize, n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(m * n);
    for d in 0..m + n - 1 {
        let mut diag: Vec<(usize, usize)> = (0..n)
            .filter(|&j| j <= d && d - j < m)
            .map(|j| (m - 1 - (d - j), j))
            .collect();
        if d % 2 == 0 {
            diag.reverse();
        }
        out.extend(diag);
    }
    out
}

/// Blocks `y2 y1 e1 x1 e2`, then `y(2j-1) y(2j) e(2j-1) x(2j-2) x(2j-1) e(2j)`,
/// dropping indices past `q`; for even `q` the last `x` precedes the final `e`.
fn topcode_way_three(q: usize) -> Vec<(usize, usize)> {
    const X: usize = 0;
    const E: usize = 1;
    const Y: usize = 2;
    let mut out = Vec::with_capacity(3 * q);
    let mut push = |r: usize, i: usize| {
        if (1..=q).contains(&i) {
            out.push((r, i - 1));
        }
    };
    for j in 1..=q.div_ceil(2) {
        if j == 1 {
            for (r, i) in [(Y, 2), (Y, 1), (E, 1), (X, 1)] {
                push(r, i);
            }
        } else {
            for (r, i) in [(Y, 2 * j - 1), (Y, 2 * j), (E, 2 * j - 1), (X, 2 * j - 2), (X, 2 * j - 1)] {
                push(r, i);
            }
        }
        if 2 * j == q {
            push(X, q);
        }
        push(E, 2 * j);
    }
    out
}

fn apply_variant(cells: Vec<(usize, usize)>, m: usize, n: usize, v: Variant) -> Vec<(usize, usize)> {
    match v {
        Variant::Plain => cells,
        Variant::Reciprocal => cells.into_iter().map(|(i, j)| (m - 1 - i, j)).collect(),
        Variant::Inverse => cells.into_iter().map(|(i, j)| (i, n - 1 - j)).collect(),
    }
}

/// Cell order `(row, column)` of a traversal over a Topcode-matrix with `q` columns.
pub fn vo_positions(q: usize, t: Traversal) -> Vec<(usize, usize)> {
    if q == 0 {
        return Vec::new();
    }
    let cells = match t.way {
        Way::One => serpentine_rows(3, q),
        Way::Two => serpentine_columns(3, q),
        Way::Three => topcode_way_three(q),
        Way::Four => column_major(3, q),
    };
    apply_variant(cells, 3, q, t.variant)
}

/// Cell order `(row, column)` of a traversal over a general `m × n` matrix.
pub fn tb_positions(m: usize, n: usize, t: Traversal) -> Result<Vec<(usize, usize)>, StringError> {
    let small = match t.way {
        Way::Four => m == 0 || n == 0,
        _ => m < 2 || n < 2,
    };
    if small {
        return Err(StringError::Shape(format!("{m}x{n} is too small for {t}")));
    }
    let cells = match t.way {
        Way::One => serpentine_rows(m, n),
        Way::Two => serpentine_columns(m, n),
        Way::Three => zigzag(m, n),
        Way::Four => column_major(m, n),
    };
    Ok(apply_variant(cells, m, n, t.variant))
}

fn token(v: i64) -> Result<u64, StringError> {
    u64::try_from(v).map_err(|_| StringError::Negative(v))
}

pub fn vo_string(m: &TopcodeMatrix, t: Traversal) -> Result<NumberString, StringError> {
    let rows = m.rows();
    vo_positions(m.q(), t)
        .into_iter()
        .map(|(i, j)| token(rows[i][j]))
        .collect::<Result<_, _>>()
        .map(NumberString)
}

pub fn tb_string(a: &[Vec<i64>], t: Traversal) -> Result<NumberString, StringError> {
    let n = a.first().map_or(0, Vec::len);
    if a.iter().any(|r| r.len() != n) {
        return Err(StringError::Shape("rows have different lengths".into()));
    }
    tb_positions(a.len(), n, t)?
        .into_iter()
        .map(|(i, j)| token(a[i][j]))
        .collect::<Result<_, _>>()
        .map(NumberString)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StringOp {
    Plus,
    Minus,
    Times,
    Interleave,
    Mix,
}

impl FromStr for StringOp {
    type Err = StringError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "plus" => StringOp::Plus,
            "minus" => StringOp::Minus,
            "times" => StringOp::Times,
            "interleave" => StringOp::Interleave,
            "mix" => StringOp::Mix,
            _ => return Err(StringError::Parse(s.into())),
        })
    }
}

fn permuted(s: &NumberString, perm: Option<&[usize]>) -> Result<Vec<u64>, StringError> {
    let Some(p) = perm else { return Ok(s.0.clone()) };
    let mut seen = vec![false; s.len()];
    if p.len() != s.len() || p.iter().any(|&i| i >= s.len() || std::mem::replace(&mut seen[i], true)) {
        return Err(StringError::Permutation(s.len()));
    }
    Ok(p.iter().map(|&i| s.0[i]).collect())
}

/// Tokenwise operation on `a'` and `b'`, the operands rearranged by the given
/// permutations (identity when `None`). `Mix` takes `a'` at even and `b'` at odd positions.
pub fn string_op(
    a: &NumberString,
    b: &NumberString,
    op: StringOp,
    perm_a: Option<&[usize]>,
    perm_b: Option<&[usize]>,
) -> Result<NumberString, StringError> {
    if a.len() != b.len() {
        return Err(StringError::Length { left: a.len(), right: b.len() });
    }
    let (pa, pb) = (permuted(a, perm_a)?, permuted(b, perm_b)?);
    let pairs = pa.iter().zip(&pb);
    let tokens = match op {
        StringOp::Plus => pairs.map(|(x, y)| x + y).collect(),
        StringOp::Minus => pairs.map(|(x, y)| x.abs_diff(*y)).collect(),
        StringOp::Times => pairs.map(|(x, y)| x * y).collect(),
        StringOp::Interleave => pairs.flat_map(|(&x, &y)| [x, y]).collect(),
        StringOp::Mix => {
            let picks: Vec<bool> = (0..pa.len()).map(|i| i % 2 == 0).collect();
            return mix(&pa, &pb, &picks);
        }
    };
    Ok(NumberString(tokens))
}

/// `picks[i]` selects `a[i]` (true) or `b[i]`; the result must share a value with each operand.
pub fn mix_with(a: &NumberString, b: &NumberString, picks: &[bool]) -> Result<NumberString, StringError> {
    if a.len() != b.len() || picks.len() != a.len() {
        return Err(StringError::Length { left: a.len(), right: b.len().min(picks.len()) });
    }
    mix(&a.0, &b.0, picks)
}

fn mix(a: &[u64], b: &[u64], picks: &[bool]) -> Result<NumberString, StringError> {
    let z: Vec<u64> = picks.iter().enumerate().map(|(i, &p)| if p { a[i] } else { b[i] }).collect();
    if !z.iter().any(|t| a.contains(t)) || !z.iter().any(|t| b.contains(t)) {
        return Err(StringError::MixCondition);
    }
    Ok(NumberString(z))
}

/// The family `f_r = base + r (mod M)` for `r` in `1..=M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StringGroup {
    pub base: NumberString,
    pub modulus: usize,
}

impl StringGroup {
    pub fn new(base: NumberString, modulus: usize) -> Result<Self, StringError> {
        if modulus == 0 {
            return Err(StringError::Modulus);
        }
        Ok(StringGroup { base, modulus })
    }

    fn check(&self, r: usize) -> Result<(), StringError> {
        if !(1..=self.modulus).contains(&r) {
            return Err(StringError::Index { index: r, modulus: self.modulus });
        }
        Ok(())
    }

    pub fn element(&self, r: usize) -> Result<NumberString, StringError> {
        self.check(r)?;
        let m = self.modulus as u64;
        Ok(NumberString(self.base.0.iter().map(|&t| (t + r as u64) % m).collect()))
    }

    /// `λ = i + j - k (mod M)`, reported in `1..=M`.
    pub fn add(&self, i: usize, j: usize, zero: usize) -> Result<usize, StringError> {
        for r in [i, j, zero] {
            self.check(r)?;
        }
        let m = self.modulus as i64;
        Ok(((i as i64 + j as i64 - zero as i64 - 1).rem_euclid(m) + 1) as usize)
    }

    /// Checks `a_t + b_t - c_t ≡ d_t (mod M)` token by token.
    pub fn identity_holds(&self, i: usize, j: usize, zero: usize) -> Result<bool, StringError> {
        let l = self.add(i, j, zero)?;
        let (a, b, c, d) = (self.element(i)?, self.element(j)?, self.element(zero)?, self.element(l)?);
        let m = self.modulus as i64;
        Ok((0..a.len()).all(|t| {
            (a.0[t] as i64 + b.0[t] as i64 - c.0[t] as i64 - d.0[t] as i64).rem_euclid(m) == 0
        }))
    }
}

pub fn string_group_add(g: &StringGroup, i: usize, j: usize, zero: usize) -> Result<usize, StringError> {
    g.add(i, j, zero)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PnbsppMode {
    /// Every assembled matrix that passes the graphicability test.
    GraphicableAny,
    /// Assembled matrices equal to the target up to column and XY exchanges.
    MatchTarget(TopcodeMatrix),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PnbsppResult {
    pub matrices: Vec<TopcodeMatrix>,
    pub cuts_visited: u64,
    pub target_found: Option<bool>,
}

pub const PNBSPP_MAX_Q: usize = 5;
pub const PNBSPP_DEFAULT_BOUND: u64 = 2_000_000;

fn normalized(m: &TopcodeMatrix) -> Vec<Column> {
    let mut cols: Vec<Column> = m.columns().into_iter().map(|(x, e, y)| (x.min(y), e, x.max(y))).collect();
    cols.sort_unstable();
    cols
}

/// Cuts a digit string into `3q` segments (no leading zeros, at most 18 digits each)
/// and places them into a `3 × q` matrix in the cell order of `assembly`.
/// Results follow the lexicographic order of the cut vectors.
pub fn pnbspp_solve(
    s: &NumberString,
    q: usize,
    mode: &PnbsppMode,
    assembly: Traversal,
    bound: u64,
) -> Result<PnbsppResult, StringError> {
    if q > PNBSPP_MAX_Q {
        return Err(StringError::QTooLarge(q));
    }
    if let Some(&t) = s.0.iter().find(|&&t| t > 9) {
        return Err(StringError::NotDigit(t));
    }
    let positions = vo_positions(q, assembly);
    let target = match mode {
        PnbsppMode::MatchTarget(m) => Some(normalized(m)),
        PnbsppMode::GraphicableAny => None,
    };
    let mut state = Cuts {
        digits: &s.0,
        parts: 3 * q,
        segments: Vec::with_capacity(3 * q),
        visited: 0,
        bound,
        on_complete: |segs: &[i64]| {
            let mut rows = [vec![0; q], vec![0; q], vec![0; q]];
            for (&(i, j), &v) in positions.iter().zip(segs) {
                rows[i][j] = v;
            }
            let [x, e, y] = rows;
            TopcodeMatrix::new(x, e, y).ok()
        },
        found: Vec::new(),
    };
    if q > 0 {
        state.cut(0)?;
    }
    let visited = state.visited;
    let matrices: Vec<TopcodeMatrix> = state
        .found
        .into_iter()
        .filter(|m| match &target {
            Some(t) => normalized(m) == *t,
            None => m.is_graphicable(),
        })
        .collect();
    let target_found = target.map(|_| !matrices.is_empty());
    Ok(PnbsppResult { matrices, cuts_visited: visited, target_found })
}

struct Cuts<'a, F> {
    digits: &'a [u64],
    parts: usize,
    segments: Vec<i64>,
    visited: u64,
    bound: u64,
    on_complete: F,
    found: Vec<TopcodeMatrix>,
}

impl<F: FnMut(&[i64]) -> Option<TopcodeMatrix>> Cuts<'_, F> {
    fn cut(&mut self, at: usize) -> Result<(), StringError> {
        let left = self.parts - self.segments.len();
        let rest = self.digits.len() - at;
        if left == 0 {
            if rest == 0 {
                self.visited += 1;
                if self.visited > self.bound {
                    return Err(StringError::BoundExceeded(self.bound));
                }
                if let Some(m) = (self.on_complete)(&self.segments) {
                    self.found.push(m);
                }
            }
            return Ok(());
        }
        if rest < left || rest > 18 * left {
            return Ok(());
        }
        let longest = if self.digits[at] == 0 { 1 } else { 18.min(rest - (left - 1)) };
        for len in 1..=longest {
            let v = self.digits[at..at + len].iter().fold(0i64, |acc, &d| acc * 10 + d as i64);
            self.segments.push(v);
            let r = self.cut(at + len);
            self.segments.pop();
            r?;
        }
        Ok(())
    }
}
