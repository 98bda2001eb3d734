//! Lattice paths over the step set {U, D, F}, the peak-avoiding automaton,
//! and the exhaustive enumerator that every counting engine is checked
//! against.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Default number of steps the brute-force oracle accepts.
pub const DEFAULT_ORACLE_CAP: usize = 16;

/// Environment variable overriding [`DEFAULT_ORACLE_CAP`].
pub const ORACLE_CAP_ENV: &str = "PEAKLESS_ORACLE_CAP";

/// A single step. The derived ordering `Flat < Up < Down` is the
/// enumeration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    Flat,
    Up,
    Down,
}

impl Step {
    pub const ALL: [Step; 3] = [Step::Flat, Step::Up, Step::Down];

    pub fn increment(self) -> i64 {
        match self {
            Step::Flat => 0,
            Step::Up => 1,
            Step::Down => -1,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Step::Flat => 'F',
            Step::Up => 'U',
            Step::Down => 'D',
        }
    }

    pub fn from_symbol(c: char) -> Result<Self> {
        match c {
            'F' => Ok(Step::Flat),
            'U' => Ok(Step::Up),
            'D' => Ok(Step::Down),
            other => Err(Error::InvalidStep(other)),
        }
    }
}

/// A finite step sequence. Any sequence is representable; validity is a
/// predicate, not a construction invariant.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LatticePath {
    steps: Vec<Step>,
}

impl LatticePath {
    pub fn new(steps: Vec<Step>) -> Self {
        Self { steps }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Levels `p_0 = 0, p_1, ..., p_n`.
    pub fn level_profile(&self) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        let mut level = 0;
        out.push(level);
        for s in &self.steps {
            level += s.increment();
            out.push(level);
        }
        out
    }

    pub fn end_level(&self) -> i64 {
        self.steps.iter().map(|s| s.increment()).sum()
    }

    /// True iff no level of the profile is negative.
    pub fn is_valid_prefix(&self) -> bool {
        self.level_profile().iter().all(|&p| p >= 0)
    }

    pub fn is_motzkin(&self) -> bool {
        self.is_valid_prefix() && self.end_level() == 0
    }

    /// Maximal level reached. Rejects paths that go below the axis.
    pub fn height(&self) -> Result<usize> {
        let profile = self.level_profile();
        if let Some(index) = profile.iter().position(|&p| p < 0) {
            return Err(Error::BelowAxis { index });
        }
        Ok(profile.into_iter().max().unwrap_or(0) as usize)
    }

    /// True iff an up-step is immediately followed by a down-step.
    pub fn has_peak(&self) -> bool {
        self.steps
            .windows(2)
            .any(|w| w[0] == Step::Up && w[1] == Step::Down)
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            write!(f, "{}", s.symbol())?;
        }
        Ok(())
    }
}

impl FromStr for LatticePath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .map(Step::from_symbol)
            .collect::<Result<Vec<_>>>()
            .map(LatticePath::new)
    }
}

/// Filters applied by the enumerator and the counting engines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PathConstraints {
    pub peakless: bool,
    pub max_height: Option<usize>,
    pub end_level: usize,
}

impl PathConstraints {
    /// All Motzkin paths.
    pub fn motzkin() -> Self {
        Self::default()
    }

    /// Peakless Motzkin paths.
    pub fn peakless() -> Self {
        Self {
            peakless: true,
            ..Self::default()
        }
    }

    pub fn with_max_height(mut self, ell: usize) -> Self {
        self.max_height = Some(ell);
        self
    }

    pub fn with_end_level(mut self, k: usize) -> Self {
        self.end_level = k;
        self
    }

    /// Checks a path against the constraints using the defining predicates
    /// only (no automaton).
    pub fn accepts(&self, path: &LatticePath) -> bool {
        let Ok(h) = path.height() else {
            return false;
        };
        path.end_level() == self.end_level as i64
            && !(self.peakless && path.has_peak())
            && self.max_height.is_none_or(|ell| h <= ell)
    }
}

/// Layer of the peak-avoiding automaton. `Bottom` means the last step was
/// an up-step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Layer {
    Top,
    Bottom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AutomatonState {
    pub layer: Layer,
    pub level: usize,
}

impl AutomatonState {
    pub const START: AutomatonState = AutomatonState {
        layer: Layer::Top,
        level: 0,
    };

    /// One transition; `None` for a forbidden move (down after up, or
    /// below level 0).
    pub fn step(self, step: Step) -> Option<AutomatonState> {
        let level = self.level;
        match (self.layer, step) {
            (_, Step::Flat) => Some(AutomatonState {
                layer: Layer::Top,
                level,
            }),
            (_, Step::Up) => Some(AutomatonState {
                layer: Layer::Bottom,
                level: level + 1,
            }),
            (Layer::Top, Step::Down) => level.checked_sub(1).map(|level| AutomatonState {
                layer: Layer::Top,
                level,
            }),
            (Layer::Bottom, Step::Down) => None,
        }
    }
}

/// Outcome of running a path through the automaton.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Acceptance {
    pub accepted: bool,
    /// Final level of the step sequence, reported even when rejected.
    pub end_level: i64,
}

/// Runs the two-layer automaton from `Top` level 0.
pub fn automaton_accepts(path: &LatticePath) -> Acceptance {
    let mut state = Some(AutomatonState::START);
    for &s in path.steps() {
        state = state.and_then(|st| st.step(s));
        if state.is_none() {
            break;
        }
    }
    Acceptance {
        accepted: state.is_some(),
        end_level: path.end_level(),
    }
}

/// Brute-force step cap, read from `PEAKLESS_ORACLE_CAP` when set.
pub fn oracle_cap_from_env() -> usize {
    std::env::var(ORACLE_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_ORACLE_CAP)
}

/// Every one of the `3^n` step sequences of length `n`, in enumeration
/// order. No filtering at all.
pub fn all_step_sequences(n: usize) -> impl Iterator<Item = LatticePath> {
    let total = 3usize.pow(n as u32);
    (0..total).map(move |mut code| {
        let mut steps = vec![Step::Flat; n];
        for slot in steps.iter_mut().rev() {
            *slot = Step::ALL[code % 3];
            code /= 3;
        }
        LatticePath::new(steps)
    })
}

/// Depth-first enumerator. Branches are cut only when the partial path is
/// already below the axis, above the height bound, too far from the end
/// level to return, or contains a peak; every leaf is re-checked with
/// [`PathConstraints::accepts`].
#[derive(Debug, Clone)]
pub struct PathIter {
    n: usize,
    constraints: PathConstraints,
    steps: Vec<Step>,
    levels: Vec<i64>,
    cursor: Vec<usize>,
    done: bool,
}

impl PathIter {
    fn new(n: usize, constraints: PathConstraints) -> Self {
        Self {
            n,
            constraints,
            steps: Vec::with_capacity(n),
            levels: vec![0],
            cursor: vec![0],
            done: false,
        }
    }

    fn backtrack(&mut self) {
        if self.steps.is_empty() {
            self.done = true;
        } else {
            self.steps.pop();
            self.levels.pop();
            self.cursor.pop();
        }
    }

    fn viable(&self, step: Step, level: i64) -> bool {
        let c = &self.constraints;
        let remaining = (self.n - self.steps.len() - 1) as i64;
        level >= 0
            && c.max_height.is_none_or(|ell| level <= ell as i64)
            && (level - c.end_level as i64).abs() <= remaining
            && !(c.peakless && step == Step::Down && self.steps.last() == Some(&Step::Up))
    }
}

impl Iterator for PathIter {
    type Item = LatticePath;

    fn next(&mut self) -> Option<LatticePath> {
        while !self.done {
            let depth = self.steps.len();
            if depth == self.n {
                let path = LatticePath::new(self.steps.clone());
                self.backtrack();
                if self.constraints.accepts(&path) {
                    return Some(path);
                }
                continue;
            }
            let choice = self.cursor[depth];
            if choice == Step::ALL.len() {
                self.backtrack();
                continue;
            }
            self.cursor[depth] += 1;
            let step = Step::ALL[choice];
            let level = self.levels[depth] + step.increment();
            if self.viable(step, level) {
                self.steps.push(step);
                self.levels.push(level);
                self.cursor.push(0);
            }
        }
        None
    }
}

/// Enumerates paths of length `n` meeting `constraints`, sorted under the
/// step order, using the environment-configured cap.
pub fn enumerate_paths(n: usize, constraints: PathConstraints) -> Result<PathIter> {
    enumerate_paths_capped(n, constraints, oracle_cap_from_env())
}

pub fn enumerate_paths_capped(
    n: usize,
    constraints: PathConstraints,
    cap: usize,
) -> Result<PathIter> {
    if n > cap {
        return Err(Error::OracleLimit { n, cap });
    }
    Ok(PathIter::new(n, constraints))
}

pub fn brute_force_count(n: usize, constraints: PathConstraints) -> Result<BigUint> {
    brute_force_count_capped(n, constraints, oracle_cap_from_env())
}

pub fn brute_force_count_capped(
    n: usize,
    constraints: PathConstraints,
    cap: usize,
) -> Result<BigUint> {
    let count = enumerate_paths_capped(n, constraints, cap)?.count();
    let mut total = BigUint::zero();
    total += count;
    Ok(total)
}
