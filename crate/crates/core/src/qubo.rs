//! QUBO and Ising formulations of maximum clique.
//!
//! The clique QUBO rewards every selected vertex with `-A` and charges `+B`
//! for every selected pair that is *not* an edge:
//!
//! ```text
//! H(x) = -A * Σ_i x_i + B * Σ_{(i,j) ∉ E} x_i x_j
//! ```
//!
//! With `B > A` every minimizer is a clique, so with `A = 1` the minimum
//! energy is `-ω(G)`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::fmt::Write as _;
use std::io::BufRead;
use std::str::FromStr;

use crate::graph::{CliqueResult, Graph};
use crate::{Error, Result};

/// Minimize `Σ a_i x_i + Σ_{i<j} a_ij x_i x_j` over `x ∈ {0,1}^N`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Qubo {
    num_variables: usize,
    linear: BTreeMap<usize, f64>,
    quadratic: BTreeMap<(usize, usize), f64>,
}

impl Qubo {
    pub fn new(num_variables: usize) -> Self {
        Qubo {
            num_variables,
            ..Default::default()
        }
    }

    pub fn num_variables(&self) -> usize {
        self.num_variables
    }

    /// Adds to `a_i`; zero coefficients are dropped.
    pub fn add_linear(&mut self, i: usize, coefficient: f64) -> Result<()> {
        self.check(i)?;
        accumulate(&mut self.linear, i, coefficient);
        Ok(())
    }

    /// Adds to `a_ij`. `i == j` lands on the linear term since `x² = x`.
    pub fn add_quadratic(&mut self, i: usize, j: usize, coefficient: f64) -> Result<()> {
        self.check(i)?;
        self.check(j)?;
        if i == j {
            accumulate(&mut self.linear, i, coefficient);
        } else {
            accumulate(&mut self.quadratic, (i.min(j), i.max(j)), coefficient);
        }
        Ok(())
    }

    pub fn linear(&self) -> &BTreeMap<usize, f64> {
        &self.linear
    }

    pub fn quadratic(&self) -> &BTreeMap<(usize, usize), f64> {
        &self.quadratic
    }

    fn check(&self, i: usize) -> Result<()> {
        if i < self.num_variables {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: i,
                num_vertices: self.num_variables,
            })
        }
    }

    fn check_len(&self, x: &BinaryAssignment) -> Result<()> {
        if x.len() == self.num_variables {
            Ok(())
        } else {
            Err(Error::LengthMismatch {
                expected: self.num_variables,
                got: x.len(),
            })
        }
    }

    pub fn evaluate(&self, x: &BinaryAssignment) -> Result<f64> {
        self.check_len(x)?;
        let bits = x.bits();
        let linear: f64 = self
            .linear
            .iter()
            .filter(|(&i, _)| bits[i])
            .map(|(_, &a)| a)
            .sum();
        let quadratic: f64 = self
            .quadratic
            .iter()
            .filter(|(&(i, j), _)| bits[i] && bits[j])
            .map(|(_, &a)| a)
            .sum();
        Ok(linear + quadratic)
    }

    /// Per-variable view used by the local solvers.
    pub(crate) fn couplings(&self) -> Couplings {
        let mut linear = vec![0.0; self.num_variables];
        for (&i, &a) in &self.linear {
            linear[i] = a;
        }
        let mut neighbors = vec![Vec::new(); self.num_variables];
        for (&(i, j), &a) in &self.quadratic {
            neighbors[i].push((j, a));
            neighbors[j].push((i, a));
        }
        Couplings { linear, neighbors }
    }

    /// Text form: `N <n>`, then `L i a_i` and `Q i j a_ij` lines.
    pub fn to_text(&self) -> String {
        let mut out = format!("N {}\n", self.num_variables);
        for (i, a) in &self.linear {
            let _ = writeln!(out, "L {i} {a}");
        }
        for ((i, j), a) in &self.quadratic {
            let _ = writeln!(out, "Q {i} {j} {a}");
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        Self::read_text(text.as_bytes())
    }

    pub fn read_text<R: BufRead>(reader: R) -> Result<Self> {
        let mut qubo: Option<Qubo> = None;
        for (index, line) in reader.lines().enumerate() {
            let line = line?;
            let line_no = index + 1;
            let err = |message: String| Error::Parse {
                line: line_no,
                message,
            };
            let tokens: Vec<&str> = line.split_whitespace().collect();
            let Some((&kind, args)) = tokens.split_first() else {
                continue;
            };
            if kind.starts_with('#') {
                continue;
            }
            match (kind, args, qubo.as_mut()) {
                ("N", [n], None) => qubo = Some(Qubo::new(parse_token(n).map_err(&err)?)),
                ("N", _, Some(_)) => return Err(err("duplicate `N` line".into())),
                (_, _, None) => return Err(err("expected `N <count>` first".into())),
                ("L", [i, a], Some(q)) => {
                    let i = parse_token(i).map_err(&err)?;
                    let a = parse_token(a).map_err(&err)?;
                    q.add_linear(i, a).map_err(|e| err(e.to_string()))?;
                }
                ("Q", [i, j, a], Some(q)) => {
                    let i = parse_token(i).map_err(&err)?;
                    let j = parse_token(j).map_err(&err)?;
                    let a = parse_token(a).map_err(&err)?;
                    q.add_quadratic(i, j, a).map_err(|e| err(e.to_string()))?;
                }
                _ => return Err(err(format!("malformed line `{line}`"))),
            }
        }
        qubo.ok_or(Error::Parse {
            line: 0,
            message: "missing `N` line".into(),
        })
    }
}

fn parse_token<T: FromStr>(token: &str) -> std::result::Result<T, String> {
    token.parse().map_err(|_| format!("invalid number `{token}`"))
}

fn accumulate<K: Ord>(map: &mut BTreeMap<K, f64>, key: K, coefficient: f64) {
    match map.entry(key) {
        Entry::Occupied(mut entry) => {
            *entry.get_mut() += coefficient;
            if *entry.get() == 0.0 {
                entry.remove();
            }
        }
        Entry::Vacant(entry) => {
            if coefficient != 0.0 {
                entry.insert(coefficient);
            }
        }
    }
}

/// Dense linear terms plus a coupling list per variable.
#[derive(Debug, Clone)]
pub(crate) struct Couplings {
    pub linear: Vec<f64>,
    pub neighbors: Vec<Vec<(usize, f64)>>,
}

impl Couplings {
    /// Energy change from flipping bit `i` of `x`.
    pub fn flip_delta(&self, x: &[bool], i: usize) -> f64 {
        let field = self.linear[i]
            + self.neighbors[i]
                .iter()
                .filter(|&&(j, _)| x[j])
                .map(|&(_, a)| a)
                .sum::<f64>();
        if x[i] {
            -field
        } else {
            field
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryAssignment(Vec<bool>);

impl BinaryAssignment {
    pub fn zeros(n: usize) -> Self {
        BinaryAssignment(vec![false; n])
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        BinaryAssignment(bits)
    }

    /// Bit `i` of `index` becomes `x_i`.
    pub fn from_index(index: u64, n: usize) -> Self {
        BinaryAssignment((0..n).map(|i| index >> i & 1 == 1).collect())
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn into_bits(self) -> Vec<bool> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn ones(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i]).collect()
    }
}

/// `x_0 x_1 ... x_{N-1}` as a string of `0`/`1`.
impl fmt::Display for BinaryAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BinaryAssignment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::InvalidArgument(format!("invalid bit `{other}`"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(BinaryAssignment)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PenaltyParams {
    a: f64,
    b: f64,
}

impl PenaltyParams {
    /// Reward `a` per vertex, penalty `b` per non-adjacent pair; needs
    /// `0 < a < b`.
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0 && b > a && b.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "penalties need 0 < A < B, got A = {a}, B = {b}"
            )));
        }
        Ok(PenaltyParams { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }
}

impl Default for PenaltyParams {
    fn default() -> Self {
        PenaltyParams { a: 1.0, b: 2.0 }
    }
}

/// One variable per vertex, `-A` on each, `+B` on each complement edge.
pub fn mc_to_qubo(g: &Graph, params: PenaltyParams) -> Qubo {
    let n = g.num_vertices();
    let mut q = Qubo::new(n);
    for v in 0..n {
        q.linear.insert(v, -params.a);
    }
    for v in 0..n {
        let mut adjacent = g.neighbors(v).iter().peekable();
        for u in 0..n {
            if adjacent.peek() == Some(&&u) {
                adjacent.next();
            } else if u > v {
                q.quadratic.insert((v, u), params.b);
            }
        }
    }
    q
}

/// Spin form `Σ h_i s_i + Σ J_ij s_i s_j + offset` with `s ∈ {-1, +1}`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct IsingModel {
    pub h: Vec<f64>,
    pub j: BTreeMap<(usize, usize), f64>,
    pub offset: f64,
}

impl IsingModel {
    pub fn energy(&self, spins: &[i8]) -> Result<f64> {
        if spins.len() != self.h.len() {
            return Err(Error::LengthMismatch {
                expected: self.h.len(),
                got: spins.len(),
            });
        }
        let field: f64 = self.h.iter().zip(spins).map(|(h, &s)| h * s as f64).sum();
        let coupling: f64 = self
            .j
            .iter()
            .map(|(&(a, b), j)| j * (spins[a] * spins[b]) as f64)
            .sum();
        Ok(field + coupling + self.offset)
    }
}

/// Spin image `s_i = 2 x_i - 1`.
pub fn spins_of(x: &BinaryAssignment) -> Vec<i8> {
    x.bits().iter().map(|&b| if b { 1 } else { -1 }).collect()
}

/// Substitutes `x_i = (1 + s_i) / 2`.
pub fn qubo_to_ising(q: &Qubo) -> IsingModel {
    let mut h = vec![0.0; q.num_variables];
    let mut j = BTreeMap::new();
    let mut offset = 0.0;
    for (&i, &a) in &q.linear {
        h[i] += a / 2.0;
        offset += a / 2.0;
    }
    for (&(a, b), &c) in &q.quadratic {
        let quarter = c / 4.0;
        h[a] += quarter;
        h[b] += quarter;
        j.insert((a, b), quarter);
        offset += quarter;
    }
    IsingModel { h, j, offset }
}

/// Outcome of reading an assignment as a vertex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decoded {
    Clique(CliqueResult),
    /// Selected pairs that are not edges, as local ids `(u, v)`, `u < v`.
    Violations(Vec<(usize, usize)>),
}

pub fn assignment_to_clique(g: &Graph, x: &BinaryAssignment) -> Result<Decoded> {
    if x.len() != g.num_vertices() {
        return Err(Error::LengthMismatch {
            expected: g.num_vertices(),
            got: x.len(),
        });
    }
    let selected = x.ones();
    let violations: Vec<(usize, usize)> = selected
        .iter()
        .enumerate()
        .flat_map(|(i, &u)| selected[i + 1..].iter().map(move |&v| (u, v)))
        .filter(|&(u, v)| !g.has_edge(u, v))
        .collect();
    if violations.is_empty() {
        Ok(Decoded::Clique(CliqueResult::from_local(g, &selected, "qubo")))
    } else {
        Ok(Decoded::Violations(violations))
    }
}

pub const MAX_BRUTE_FORCE_VARIABLES: usize = 24;

/// Exhaustive minimum. Among equal energies the assignment with the
/// smallest index wins, where bit `i` of the index is `x_i`.
pub fn brute_force_min(q: &Qubo) -> Result<(BinaryAssignment, f64)> {
    let n = q.num_variables;
    if n > MAX_BRUTE_FORCE_VARIABLES {
        return Err(Error::InvalidArgument(format!(
            "brute force supports at most {MAX_BRUTE_FORCE_VARIABLES} variables, got {n}"
        )));
    }
    let couplings = q.couplings();
    // Walk the Gray code so each step is a single flip.
    let mut x = vec![false; n];
    let mut energy = 0.0;
    let (mut best_index, mut best_energy) = (0u64, 0.0);
    for step in 1u64..(1u64 << n) {
        let bit = step.trailing_zeros() as usize;
        energy += couplings.flip_delta(&x, bit);
        x[bit] = !x[bit];
        let index = step ^ (step >> 1);
        if energy < best_energy || (energy == best_energy && index < best_index) {
            best_energy = energy;
            best_index = index;
        }
    }
    let best = BinaryAssignment::from_index(best_index, n);
    let exact = q.evaluate(&best)?;
    Ok((best, exact))
}
