//! The worked example games, built in code.
//!
//! Player names are `"1"`, `"2"`, ... and strategy names follow the usual
//! table labels. The files under `fixtures/` at the workspace root hold the
//! same games as documents.

use crate::game::Game;
use crate::rational::Rational;

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

/// Builds a game from a cell function returning every player's payoff.
pub fn from_cells(strategies: &[&[&str]], cell: impl Fn(&[usize]) -> Vec<i64>) -> Game {
    let n = strategies.len();
    let players = (1..=n).map(|i| i.to_string()).collect();
    let lists: Vec<Vec<String>> = strategies.iter().map(|s| names(s)).collect();
    let shape = Game::zeros(players, lists).expect("fixture shape");
    let mut rows = vec![Vec::with_capacity(shape.num_profiles()); n];
    for s in shape.profiles() {
        let values = cell(&s);
        assert_eq!(values.len(), n, "fixture cell arity");
        for (row, v) in rows.iter_mut().zip(values) {
            row.push(Rational::from_integer(v));
        }
    }
    shape.with_payoffs(rows).expect("fixture payoffs")
}

/// Two-player bimatrix; `table[row][col]` is `(u_1, u_2)`.
pub fn bimatrix(rows: &[&str], cols: &[&str], table: &[&[(i64, i64)]]) -> Game {
    from_cells(&[rows, cols], |s| {
        let (a, b) = table[s[0]][s[1]];
        vec![a, b]
    })
}

/// Three-player game given as one bimatrix-like table per player-3 strategy.
pub fn three_player(strategies: [&[&str]; 3], tables: [[[(i64, i64, i64); 2]; 2]; 2]) -> Game {
    from_cells(&strategies, |s| {
        let (a, b, c) = tables[s[2]][s[0]][s[1]];
        vec![a, b, c]
    })
}

type Cell4 = (i64, i64, i64, i64);

/// Four-player 2x2x2x2 game; `tables[k3][k4][row][col]`.
pub fn four_player(strategies: [&[&str]; 4], tables: [[[[Cell4; 2]; 2]; 2]; 2]) -> Game {
    from_cells(&strategies, |s| {
        let (a, b, c, d) = tables[s[2]][s[3]][s[0]][s[1]];
        vec![a, b, c, d]
    })
}

/// Prisoner's Dilemma as first tabulated: `(d,d) = 2,2`, `(c,c) = 3,3`.
pub fn prisoners_dilemma_tabular() -> Game {
    bimatrix(
        &["d", "c"],
        &["d", "c"],
        &[&[(2, 2), (1, 4)], &[(4, 1), (3, 3)]],
    )
    .with_title("Prisoner's Dilemma (table representation)")
}

/// The 2x2x2 table-representation example.
pub fn three_player_tabular() -> Game {
    three_player(
        [&["a_1", "a_2"], &["b_1", "b_2"], &["c_1", "c_2"]],
        [
            [[(1, 1, 1), (2, 3, 2)], [(3, 2, 2), (4, 4, 5)]],
            [[(2, 2, 3), (5, 4, 4)], [(4, 5, 4), (6, 6, 6)]],
        ],
    )
    .with_title("Three player 2x2x2 game")
}

/// The Prisoner's Dilemma used throughout the symmetry chapter:
/// `(d,d) = 3,3`, `(d,c) = 1,4`, `(c,d) = 4,1`, `(c,c) = 2,2`.
pub fn prisoners_dilemma() -> Game {
    bimatrix(
        &["d", "c"],
        &["d", "c"],
        &[&[(3, 3), (1, 4)], &[(4, 1), (2, 2)]],
    )
    .with_title("Prisoner's Dilemma")
}

/// Relabelled Prisoner's Dilemma, strictly equivalent but not VNM symmetric.
pub fn prisoners_dilemma_relabelled() -> Game {
    bimatrix(
        &["a", "b"],
        &["a", "b"],
        &[&[(1, 4), (3, 3)], &[(2, 2), (4, 1)]],
    )
    .with_title("Relabelled Prisoner's Dilemma")
}

/// First game of the strict isomorphism example.
pub fn isomorphism_source() -> Game {
    bimatrix(
        &["a_1", "a_2"],
        &["b_1", "b_2"],
        &[&[(1, 8), (2, 7)], &[(3, 6), (4, 5)]],
    )
    .with_title("Isomorphism example, first game")
}

/// Second game of the strict isomorphism example.
pub fn isomorphism_target() -> Game {
    bimatrix(
        &["c_1", "c_2"],
        &["d_1", "d_2"],
        &[&[(6, 3), (8, 1)], &[(5, 4), (7, 2)]],
    )
    .with_title("Isomorphism example, second game")
}

pub fn vnm_two_player() -> Game {
    bimatrix(
        &["a", "b"],
        &["a", "b"],
        &[&[(1, 1), (3, 2)], &[(2, 3), (4, 4)]],
    )
    .with_title("Two player VNM symmetric game")
}

pub fn matching_pennies() -> Game {
    bimatrix(
        &["H", "T"],
        &["H", "T"],
        &[&[(1, -1), (-1, 1)], &[(-1, 1), (1, -1)]],
    )
    .with_title("Matching Pennies")
}

pub fn rock_paper_scissors() -> Game {
    bimatrix(
        &["R", "P", "S"],
        &["R", "P", "S"],
        &[
            &[(0, 0), (0, 1), (1, 0)],
            &[(1, 0), (0, 0), (0, 1)],
            &[(0, 1), (1, 0), (0, 0)],
        ],
    )
    .with_title("Rock, Paper, Scissors")
}

const ABCDEF: [&[&str]; 3] = [&["a", "b"], &["c", "d"], &["e", "f"]];
const ABCDEFGH: [&[&str]; 4] = [&["a", "b"], &["c", "d"], &["e", "f"], &["g", "h"]];

pub fn fully_standard_three_player() -> Game {
    three_player(
        ABCDEF,
        [
            [[(1, 1, 1), (6, 2, 6)], [(2, 6, 6), (5, 5, 3)]],
            [[(6, 6, 2), (3, 5, 5)], [(5, 3, 5), (4, 4, 4)]],
        ],
    )
    .with_title("Fully standard symmetric three player game")
}

pub fn non_fully_standard_three_player() -> Game {
    three_player(
        ABCDEF,
        [
            [[(1, 1, 1), (3, 5, 7)], [(5, 7, 3), (2, 4, 6)]],
            [[(7, 3, 5), (6, 2, 4)], [(4, 6, 2), (8, 8, 8)]],
        ],
    )
    .with_title("Non-fully standard symmetric three player game")
}

/// First non-fully non-standard four-player game. Cell `(a,d,e,g)` is
/// `4,1,2,3`, the value forced by the game's 4-cycle generator.
pub fn non_fully_non_standard_four_player_a() -> Game {
    four_player(
        ABCDEFGH,
        [
            [
                [[(1, 2, 3, 4), (4, 1, 2, 3)], [(2, 3, 4, 1), (5, 6, 7, 8)]],
                [[(6, 7, 8, 5), (7, 8, 5, 6)], [(3, 4, 1, 2), (8, 5, 6, 7)]],
            ],
            [
                [[(8, 5, 6, 7), (3, 4, 1, 2)], [(7, 8, 5, 6), (6, 7, 8, 5)]],
                [[(5, 6, 7, 8), (2, 3, 4, 1)], [(4, 1, 2, 3), (1, 2, 3, 4)]],
            ],
        ],
    )
    .with_title("Non-fully non-standard symmetric four player game (4-cycle)")
}

/// Second non-fully non-standard four-player game: symmetric without any
/// automorphism over a 4-cycle.
pub fn non_fully_non_standard_four_player_b() -> Game {
    four_player(
        ABCDEFGH,
        [
            [
                [[(1, 1, 2, 2), (3, 4, 4, 3)], [(4, 3, 3, 4), (2, 2, 1, 1)]],
                [[(3, 4, 4, 3), (1, 1, 2, 2)], [(2, 2, 1, 1), (4, 3, 3, 4)]],
            ],
            [
                [[(4, 3, 3, 4), (2, 2, 1, 1)], [(1, 1, 2, 2), (3, 4, 4, 3)]],
                [[(2, 2, 1, 1), (4, 3, 3, 4)], [(3, 4, 4, 3), (1, 1, 2, 2)]],
            ],
        ],
    )
    .with_title("Non-fully non-standard symmetric four player game (Klein four)")
}

pub fn fully_non_standard_four_player() -> Game {
    four_player(
        ABCDEFGH,
        [
            [
                [[(2, 1, 1, 1), (1, 1, 2, 1)], [(2, 1, 1, 1), (1, 1, 1, 2)]],
                [[(1, 2, 1, 1), (1, 2, 1, 1)], [(1, 1, 2, 1), (1, 1, 1, 2)]],
            ],
            [
                [[(1, 1, 1, 2), (1, 1, 2, 1)], [(1, 2, 1, 1), (1, 2, 1, 1)]],
                [[(1, 1, 1, 2), (2, 1, 1, 1)], [(1, 1, 2, 1), (2, 1, 1, 1)]],
            ],
        ],
    )
    .with_title("Fully non-standard symmetric four player game")
}

/// Non-fully standard symmetric 2x2x2 game without pure equilibria.
pub fn cheng_counterexample() -> Game {
    three_player(
        ABCDEF,
        [
            [[(2, 2, 2), (6, 4, 5)], [(4, 5, 6), (8, 1, 7)]],
            [[(5, 6, 4), (7, 8, 1)], [(1, 7, 8), (3, 3, 3)]],
        ],
    )
    .with_title("Non-fully standard symmetric 2x2x2 game without pure equilibria")
}

/// Three-player VNM symmetric game that is not DM symmetric.
pub fn vnm_three_player() -> Game {
    three_player(
        [&["a", "b"], &["a", "b"], &["a", "b"]],
        [
            [[(1, 1, 1), (2, 3, 2)], [(3, 2, 2), (4, 4, 5)]],
            [[(2, 2, 3), (5, 4, 4)], [(4, 5, 4), (6, 6, 6)]],
        ],
    )
    .with_title("Three player VNM symmetric game")
}

/// `n` players with `d` strategies each (`s1`, `s2`, ...) and all payoffs 0.
pub fn constant_game(n: usize, d: usize) -> Game {
    let players = (1..=n).map(|i| i.to_string()).collect();
    let lists = vec![(1..=d).map(|k| format!("s{k}")).collect(); n];
    Game::zeros(players, lists).expect("constant shape")
}

/// Every named fixture with its file stem under `fixtures/`.
pub fn corpus() -> Vec<(&'static str, Game)> {
    vec![
        ("pd_tabular", prisoners_dilemma_tabular()),
        ("three_player_tabular", three_player_tabular()),
        ("iso_a", isomorphism_source()),
        ("iso_b", isomorphism_target()),
        ("pd_a", prisoners_dilemma()),
        ("pd_b", prisoners_dilemma_relabelled()),
        ("vnm_2p", vnm_two_player()),
        ("mp", matching_pennies()),
        ("fully_standard_3p", fully_standard_three_player()),
        ("non_fully_standard_3p", non_fully_standard_three_player()),
        ("non_fully_non_standard_4p_a", non_fully_non_standard_four_player_a()),
        ("non_fully_non_standard_4p_b", non_fully_non_standard_four_player_b()),
        ("fully_non_standard_4p", fully_non_standard_four_player()),
        ("rps", rock_paper_scissors()),
        ("cheng_counterexample_3p", cheng_counterexample()),
        ("vnm_3p", vnm_three_player()),
    ]
}
