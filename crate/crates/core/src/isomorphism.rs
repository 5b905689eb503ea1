//! Strict, ordinal and cardinal game isomorphisms.
//!
//! Ordinal and cardinal questions are reduced to strict ones. A bijection is
//! an ordinal isomorphism iff it is a strict isomorphism between the dense
//! rank images of the two games, and a cardinal isomorphism iff it is a
//! strict isomorphism between the min/max affine normalisations.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::bijection::GameBijection;
use crate::error::Error;
use crate::game::{cartesian, Game};
use crate::par::{self, Execution};
use crate::perm::Permutation;
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IsoMode {
    Strict,
    Ordinal,
    Cardinal,
}

impl IsoMode {
    pub const ALL: [IsoMode; 3] = [IsoMode::Strict, IsoMode::Ordinal, IsoMode::Cardinal];

    pub fn as_str(self) -> &'static str {
        match self {
            IsoMode::Strict => "strict",
            IsoMode::Ordinal => "ordinal",
            IsoMode::Cardinal => "cardinal",
        }
    }
}

impl fmt::Display for IsoMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IsoMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "strict" => Ok(IsoMode::Strict),
            "ordinal" => Ok(IsoMode::Ordinal),
            "cardinal" => Ok(IsoMode::Cardinal),
            other => Err(Error::UnknownName {
                kind: "isomorphism mode",
                name: other.to_string(),
            }),
        }
    }
}

/// Per source player `i`, the map `x -> scale * x + shift` taking `u_i` onto
/// `v_{g.i} ∘ g`. Every scale is positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineWitness {
    pub maps: Vec<(Rational, Rational)>,
}

impl AffineWitness {
    pub fn identity(n: usize) -> Self {
        AffineWitness {
            maps: vec![(Rational::one(), Rational::zero()); n],
        }
    }

    pub fn apply(&self, player: usize, x: &Rational) -> Rational {
        let (scale, shift) = &self.maps[player];
        scale * x + shift
    }
}

/// `u_i(s) = v_{g.i}(g.s)` for every player and profile.
pub fn verify_strict(g: &GameBijection) -> bool {
    transported_rows_equal(g, g.source().payoff_rows(), g.target().payoff_rows())
}

fn transported_rows_equal<T: PartialEq>(g: &GameBijection, src: &[Vec<T>], dst: &[Vec<T>]) -> bool {
    let (a, b) = (g.source(), g.target());
    a.profiles().all(|s| {
        let t = b.profile_index(&g.act_unchecked(&s));
        let si = a.profile_index(&s);
        (0..a.num_players()).all(|i| src[i][si] == dst[g.player_image(i)][t])
    })
}

/// Each player's pure preference order is carried over exactly.
pub fn verify_ordinal(g: &GameBijection) -> bool {
    let src = rank_rows(g.source());
    let dst = rank_rows(g.target());
    transported_rows_equal(g, &src, &dst)
}

/// Returns the affine witness when `g` is a cardinal isomorphism. Players
/// with constant payoffs get scale 1 and shift `v - u`.
pub fn verify_cardinal(g: &GameBijection) -> Option<AffineWitness> {
    let (a, b) = (g.source(), g.target());
    let n = a.num_players();
    let images: Vec<usize> = a
        .profiles()
        .map(|s| b.profile_index(&g.act_unchecked(&s)))
        .collect();
    let mut maps = Vec::with_capacity(n);
    for i in 0..n {
        let u = a.payoff_row(i);
        let v = b.payoff_row(g.player_image(i));
        let pulled: Vec<&Rational> = images.iter().map(|&t| &v[t]).collect();
        let lo = argmin(u);
        let hi = argmax(u);
        let (scale, shift) = if u[lo] == u[hi] {
            (Rational::one(), pulled[lo] - &u[lo])
        } else {
            let scale = (pulled[hi] - pulled[lo]) / (&u[hi] - &u[lo]);
            if !scale.is_positive() {
                return None;
            }
            let shift = pulled[lo] - &scale * &u[lo];
            (scale, shift)
        };
        if u.iter().zip(&pulled).any(|(x, y)| &(&scale * x + &shift) != *y) {
            return None;
        }
        maps.push((scale, shift));
    }
    Some(AffineWitness { maps })
}

fn argmin(v: &[Rational]) -> usize {
    (0..v.len()).min_by(|&x, &y| v[x].cmp(&v[y])).expect("non-empty row")
}

fn argmax(v: &[Rational]) -> usize {
    (0..v.len()).rev().max_by(|&x, &y| v[x].cmp(&v[y])).expect("non-empty row")
}

fn dense_ranks(row: &[Rational]) -> Vec<usize> {
    let mut distinct: Vec<&Rational> = row.iter().collect();
    distinct.sort();
    distinct.dedup();
    row.iter()
        .map(|x| distinct.binary_search(&x).expect("value present"))
        .collect()
}

fn rank_rows(game: &Game) -> Vec<Vec<usize>> {
    game.payoff_rows().iter().map(|r| dense_ranks(r)).collect()
}

/// Replaces each player's payoffs by dense ranks `0..k`.
pub fn rank_canonical(game: &Game) -> Game {
    let rows = rank_rows(game)
        .into_iter()
        .map(|r| r.into_iter().map(|k| Rational::from_integer(k as i64)).collect())
        .collect();
    game.with_payoffs(rows).expect("same shape")
}

/// Maps each player's payoffs affinely so the minimum is 0 and the maximum
/// is 1; constant rows become 0.
pub fn affine_canonical(game: &Game) -> Game {
    let rows = game
        .payoff_rows()
        .iter()
        .map(|row| {
            let lo = row.iter().min().expect("non-empty").clone();
            let hi = row.iter().max().expect("non-empty").clone();
            if lo == hi {
                vec![Rational::zero(); row.len()]
            } else {
                let span = &hi - &lo;
                row.iter().map(|x| (x - &lo) / &span).collect()
            }
        })
        .collect();
    game.with_payoffs(rows).expect("same shape")
}

pub fn canonical_image(game: &Game, mode: IsoMode) -> Game {
    match mode {
        IsoMode::Strict => game.clone(),
        IsoMode::Ordinal => rank_canonical(game),
        IsoMode::Cardinal => affine_canonical(game),
    }
}

/// `verify_<mode>`.
pub fn verify(g: &GameBijection, mode: IsoMode) -> bool {
    match mode {
        IsoMode::Strict => verify_strict(g),
        IsoMode::Ordinal => verify_ordinal(g),
        IsoMode::Cardinal => verify_cardinal(g).is_some(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Limit {
    All,
    AtMost(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SearchOptions {
    pub execution: Execution,
    /// Only consider bijections whose player map is the identity.
    pub role_preserving: bool,
}

/// All isomorphisms of the given mode, in canonical order (player map, then
/// strategy maps). With a limit, the first `k` in that order.
pub fn search_isomorphisms(a: &Arc<Game>, b: &Arc<Game>, mode: IsoMode, limit: Limit) -> Vec<GameBijection> {
    search_isomorphisms_with(a, b, mode, limit, SearchOptions::default())
}

pub fn search_isomorphisms_with(
    a: &Arc<Game>,
    b: &Arc<Game>,
    mode: IsoMode,
    limit: Limit,
    options: SearchOptions,
) -> Vec<GameBijection> {
    let Some(search) = Search::new(a, b, mode, options.role_preserving) else {
        return Vec::new();
    };
    let roots = search.player_maps();
    let found: Vec<(Permutation, Vec<Vec<usize>>)> = match limit {
        Limit::All => par::map(options.execution, &roots, |p| search.strategy_maps(p, false))
            .into_iter()
            .flatten()
            .collect(),
        Limit::AtMost(k) => {
            let mut out = Vec::new();
            for p in &roots {
                if out.len() >= k {
                    break;
                }
                out.extend(search.strategy_maps(p, false));
            }
            out.truncate(k);
            out
        }
    };
    found
        .into_iter()
        .map(|(p, maps)| GameBijection::new_unchecked(a.clone(), b.clone(), p, maps))
        .collect()
}

/// Any one isomorphism, or `None`.
pub fn find_isomorphism(a: &Arc<Game>, b: &Arc<Game>, mode: IsoMode, options: SearchOptions) -> Option<GameBijection> {
    let search = Search::new(a, b, mode, options.role_preserving)?;
    let roots = search.player_maps();
    par::find_first(options.execution, &roots, |p| {
        search.strategy_maps(p, true).into_iter().next()
    })
    .map(|(p, maps)| GameBijection::new_unchecked(a.clone(), b.clone(), p, maps))
}

pub fn are_equivalent(a: &Arc<Game>, b: &Arc<Game>, mode: IsoMode) -> bool {
    are_equivalent_with(a, b, mode, SearchOptions::default())
}

pub fn are_equivalent_with(a: &Arc<Game>, b: &Arc<Game>, mode: IsoMode, options: SearchOptions) -> bool {
    let Some(search) = Search::new(a, b, mode, options.role_preserving) else {
        return false;
    };
    let roots = search.player_maps();
    par::any(options.execution, &roots, |p| !search.strategy_maps(p, true).is_empty())
}

/// Backtracking search for strict isomorphisms between canonical images.
/// Payoff values are interned as integers shared by both games.
struct Search {
    n: usize,
    src_counts: Vec<usize>,
    src_strides: Vec<usize>,
    dst_strides: Vec<usize>,
    src: Vec<Vec<u32>>,
    dst: Vec<Vec<u32>>,
    /// `player_targets[i]`: target players compatible with source player `i`.
    player_targets: Vec<Vec<usize>>,
    /// `[player][strategy][payoff player]` -> sorted payoffs on the slice.
    src_slices: Vec<Vec<Vec<Vec<u32>>>>,
    dst_slices: Vec<Vec<Vec<Vec<u32>>>>,
    role_preserving: bool,
}

fn strides(counts: &[usize]) -> Vec<usize> {
    let mut s = vec![1; counts.len()];
    for i in (0..counts.len().saturating_sub(1)).rev() {
        s[i] = s[i + 1] * counts[i + 1];
    }
    s
}

fn slice_signatures(game: &Game, rows: &[Vec<u32>]) -> Vec<Vec<Vec<Vec<u32>>>> {
    let n = game.num_players();
    let mut sig: Vec<Vec<Vec<Vec<u32>>>> = game
        .strategy_counts()
        .iter()
        .map(|&d| vec![vec![Vec::new(); n]; d])
        .collect();
    for (index, s) in game.profiles().enumerate() {
        for (i, &k) in s.iter().enumerate() {
            for (p, row) in rows.iter().enumerate() {
                sig[i][k][p].push(row[index]);
            }
        }
    }
    for per_player in &mut sig {
        for per_strategy in per_player {
            for values in per_strategy {
                values.sort_unstable();
            }
        }
    }
    sig
}

impl Search {
    fn new(a: &Game, b: &Game, mode: IsoMode, role_preserving: bool) -> Option<Search> {
        let n = a.num_players();
        if b.num_players() != n {
            return None;
        }
        let mut sa = a.strategy_counts().to_vec();
        let mut sb = b.strategy_counts().to_vec();
        sa.sort_unstable();
        sb.sort_unstable();
        if sa != sb {
            return None;
        }
        let ca = canonical_image(a, mode);
        let cb = canonical_image(b, mode);
        let mut intern: HashMap<&Rational, u32> = HashMap::new();
        let mut code = |x| {
            let next = intern.len() as u32;
            *intern.entry(x).or_insert(next)
        };
        let src: Vec<Vec<u32>> = ca.payoff_rows().iter().map(|r| r.iter().map(&mut code).collect()).collect();
        let dst: Vec<Vec<u32>> = cb.payoff_rows().iter().map(|r| r.iter().map(&mut code).collect()).collect();
        let sorted = |rows: &[Vec<u32>]| -> Vec<Vec<u32>> {
            rows.iter()
                .map(|r| {
                    let mut r = r.clone();
                    r.sort_unstable();
                    r
                })
                .collect()
        };
        let (ms, md) = (sorted(&src), sorted(&dst));
        let player_targets: Vec<Vec<usize>> = (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| !role_preserving || i == j)
                    .filter(|&j| a.strategy_counts()[i] == b.strategy_counts()[j] && ms[i] == md[j])
                    .collect()
            })
            .collect();
        let src_slices = slice_signatures(a, &src);
        let dst_slices = slice_signatures(b, &dst);
        Some(Search {
            n,
            src_counts: a.strategy_counts().to_vec(),
            src_strides: strides(a.strategy_counts()),
            dst_strides: strides(b.strategy_counts()),
            src,
            dst,
            player_targets,
            src_slices,
            dst_slices,
            role_preserving,
        })
    }

    /// Candidate player permutations in lexicographic order.
    fn player_maps(&self) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(self.n);
        let mut used = vec![false; self.n];
        self.extend_players(&mut cur, &mut used, &mut out);
        debug_assert!(!self.role_preserving || out.len() <= 1);
        out
    }

    fn extend_players(&self, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
        let i = cur.len();
        if i == self.n {
            out.push(Permutation::new(cur.clone()).expect("bijective by construction"));
            return;
        }
        for &j in &self.player_targets[i] {
            if used[j] {
                continue;
            }
            used[j] = true;
            cur.push(j);
            self.extend_players(cur, used, out);
            cur.pop();
            used[j] = false;
        }
    }

    /// Every strategy assignment completing `perm`, sorted canonically.
    fn strategy_maps(&self, perm: &Permutation, first_only: bool) -> Vec<(Permutation, Vec<Vec<usize>>)> {
        // Strategy candidates from slice signatures.
        let candidates: Vec<Vec<Vec<usize>>> = (0..self.n)
            .map(|i| {
                let j = perm.apply(i);
                (0..self.src_counts[i])
                    .map(|k| {
                        (0..self.src_counts[i])
                            .filter(|&t| {
                                (0..self.n).all(|p| {
                                    self.src_slices[i][k][p] == self.dst_slices[j][t][perm.apply(p)]
                                })
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        if candidates.iter().flatten().any(Vec::is_empty) {
            return Vec::new();
        }
        let max_d = self.src_counts.iter().copied().max().unwrap_or(0);
        let slots: Vec<(usize, usize)> = (0..max_d)
            .flat_map(|r| (0..self.n).filter(move |&i| r < self.src_counts[i]).map(move |i| (i, r)))
            .collect();
        let mut state = Assign {
            maps: self.src_counts.iter().map(|&d| vec![usize::MAX; d]).collect(),
            used: self.src_counts.iter().map(|&d| vec![false; d]).collect(),
            assigned: vec![0; self.n],
        };
        let mut out = Vec::new();
        self.assign(perm, &candidates, &slots, 0, &mut state, &mut out, first_only);
        out.sort();
        out.into_iter().map(|maps| (perm.clone(), maps)).collect()
    }

    #[allow(clippy::too_many_arguments)]
    fn assign(
        &self,
        perm: &Permutation,
        candidates: &[Vec<Vec<usize>>],
        slots: &[(usize, usize)],
        depth: usize,
        state: &mut Assign,
        out: &mut Vec<Vec<Vec<usize>>>,
        first_only: bool,
    ) -> bool {
        if depth == slots.len() {
            out.push(state.maps.clone());
            return first_only;
        }
        let (i, r) = slots[depth];
        for &t in &candidates[i][r] {
            if state.used[i][t] {
                continue;
            }
            state.used[i][t] = true;
            state.maps[i][r] = t;
            state.assigned[i] += 1;
            if self.consistent(perm, state, i, r) && self.assign(perm, candidates, slots, depth + 1, state, out, first_only) {
                return true;
            }
            state.assigned[i] -= 1;
            state.maps[i][r] = usize::MAX;
            state.used[i][t] = false;
        }
        false
    }

    /// Checks every cell newly determined by assigning `(i, r)`.
    fn consistent(&self, perm: &Permutation, state: &Assign, i: usize, r: usize) -> bool {
        let dims: Vec<usize> = (0..self.n)
            .map(|j| if j == i { 1 } else { state.assigned[j] })
            .collect();
        if dims.contains(&0) {
            return true;
        }
        cartesian(&dims).into_iter().all(|mut s| {
            s[i] = r;
            let mut si = 0;
            let mut ti = 0;
            for (j, &k) in s.iter().enumerate() {
                si += k * self.src_strides[j];
                ti += state.maps[j][k] * self.dst_strides[perm.apply(j)];
            }
            (0..self.n).all(|p| self.src[p][si] == self.dst[perm.apply(p)][ti])
        })
    }
}

struct Assign {
    maps: Vec<Vec<usize>>,
    used: Vec<Vec<bool>>,
    assigned: Vec<usize>,
}
