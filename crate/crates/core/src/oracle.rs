//! Classic depth-limited minimax over strictly alternating games, and an
//! embedding of such games into the real-time model.
//!
//! Neither is meant for playing: they exist so the real-time search can be
//! checked against plain minimax on games where both must agree.

use std::fmt::Debug;
use std::hash::Hash;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::model::{
    BasicAction, Evaluator, GameClock, GameModel, GameOutcome, ModelError, Player, PlayerAction,
    UnitId, Until,
};
use crate::score::{self, Score};

/// A turn-taking game: exactly one player moves in every non-terminal state.
pub trait TurnBasedGame {
    type State: Clone + Eq + Hash + Debug + Send + Sync;
    type Move: Clone + Eq + Hash + Debug + Send + Sync;

    fn to_move(&self, s: &Self::State) -> Player;
    fn moves(&self, s: &Self::State) -> Vec<Self::Move>;
    fn apply(&self, s: &Self::State, m: &Self::Move) -> Self::State;
    fn winner(&self, s: &Self::State) -> GameOutcome;

    /// Moves `p` may make in `s`; empty when it is not `p`'s turn.
    fn legal_moves(&self, s: &Self::State, p: Player) -> Vec<Self::Move> {
        if self.to_move(s) == p {
            self.moves(s)
        } else {
            Vec::new()
        }
    }
}

/// Depth-limited minimax, with `p` the player to move.
pub fn minimax<G, E, V>(game: &G, eval: &E, s: &G::State, depth: u32, p: Player) -> V
where
    G: TurnBasedGame,
    E: Evaluator<G::State, V>,
    V: Score,
{
    if depth == 0 || game.winner(s).is_over() {
        return eval.evaluate(s);
    }
    match p {
        Player::Max => {
            let mut best = V::lowest();
            for m in game.legal_moves(s, Player::Max) {
                let v = minimax(game, eval, &game.apply(s, &m), depth - 1, Player::Min);
                best = best.max_of(v);
            }
            best
        }
        Player::Min => {
            let mut best = V::highest();
            for m in game.legal_moves(s, Player::Min) {
                let v = minimax(game, eval, &game.apply(s, &m), depth - 1, Player::Max);
                best = best.min_of(v);
            }
            best
        }
    }
}

/// A turn-based move as a duration-1 order to the mover's single unit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EmbeddedMove<Mv> {
    pub player: Player,
    pub mv: Mv,
}

impl<Mv: Clone + Eq + Hash + Debug + Send + Sync> BasicAction for EmbeddedMove<Mv> {
    fn unit(&self) -> UnitId {
        self.player.index() as UnitId
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EmbeddedState<S, Mv> {
    pub inner: S,
    pub clock: GameClock,
    /// Move issued but not yet applied.
    pub pending: Option<EmbeddedMove<Mv>>,
}

/// Real-time view of a turn-based game.
///
/// Each player owns one unit. The unit of the player to move is ready; the
/// other is busy. A move takes one cycle, after which the turn passes.
#[derive(Clone, Debug)]
pub struct Embedded<G> {
    pub game: G,
}

pub fn embed_turn_based<G: TurnBasedGame>(game: G) -> Embedded<G> {
    Embedded { game }
}

impl<G: TurnBasedGame> Embedded<G> {
    pub fn initial(&self, s: G::State) -> EmbeddedState<G::State, G::Move> {
        EmbeddedState {
            inner: s,
            clock: GameClock::ZERO,
            pending: None,
        }
    }
}

impl<G: TurnBasedGame> GameModel for Embedded<G> {
    type State = EmbeddedState<G::State, G::Move>;
    type Action = EmbeddedMove<G::Move>;

    fn clock(&self, s: &Self::State) -> GameClock {
        s.clock
    }

    fn can_act(&self, s: &Self::State, p: Player) -> bool {
        s.pending.is_none()
            && !self.game.winner(&s.inner).is_over()
            && self.game.to_move(&s.inner) == p
    }

    fn player_actions(&self, s: &Self::State, p: Player) -> Vec<PlayerAction<Self::Action>> {
        if !self.can_act(s, p) {
            return vec![PlayerAction::empty()];
        }
        let moves = self.game.moves(&s.inner);
        if moves.is_empty() {
            return vec![PlayerAction::empty()];
        }
        moves
            .into_iter()
            .map(|mv| PlayerAction::single(EmbeddedMove { player: p, mv }))
            .collect()
    }

    fn issue(
        &self,
        s: &Self::State,
        action: &PlayerAction<Self::Action>,
        p: Player,
    ) -> Result<Self::State, ModelError> {
        if action.is_empty() {
            return Ok(s.clone());
        }
        if !self.can_act(s, p) || action.len() != 1 {
            return Err(ModelError::IllegalAction(format!("{p} cannot move now")));
        }
        let order = &action.as_slice()[0];
        if order.player != p || !self.game.moves(&s.inner).contains(&order.mv) {
            return Err(ModelError::IllegalAction(format!("{order:?} is not legal")));
        }
        let mut next = s.clone();
        next.pending = Some(order.clone());
        Ok(next)
    }

    fn simulate(&self, s: &Self::State, until: Until) -> Result<Self::State, ModelError> {
        if let Until::Cycle(t) = until {
            if t < s.clock {
                return Err(ModelError::ClockRegression {
                    now: s.clock,
                    until: t,
                });
            }
        }
        let Some(order) = &s.pending else {
            return Ok(s.clone());
        };
        if until.reached(s.clock) {
            return Ok(s.clone());
        }
        let inner = self.game.apply(&s.inner, &order.mv);
        if !self.game.winner(&inner).is_over() && self.game.to_move(&inner) == order.player {
            return Err(ModelError::ContractViolation(format!(
                "{} moved twice in a row",
                order.player
            )));
        }
        Ok(EmbeddedState {
            inner,
            clock: s.clock + 1,
            pending: None,
        })
    }

    fn eta(&self, a: &Self::Action, s: &Self::State) -> Result<u64, ModelError> {
        if s.pending.as_ref() == Some(a)
            || self.game.legal_moves(&s.inner, a.player).contains(&a.mv)
        {
            Ok(1)
        } else {
            Err(ModelError::NotApplicable(format!("{a:?}")))
        }
    }

    fn winner(&self, s: &Self::State) -> GameOutcome {
        self.game.winner(&s.inner)
    }

    fn shortest_action(&self) -> u64 {
        1
    }

    fn idle_action(&self, s: &Self::State, p: Player) -> PlayerAction<Self::Action> {
        // Turn-based games have no no-op; the first legal move stands in.
        self.player_actions(s, p).swap_remove(0)
    }
}

/// Evaluates an embedded state by its turn-based inner state.
#[derive(Clone, Debug)]
pub struct EmbeddedEval<E>(pub E);

impl<S, Mv, V: Score, E: Evaluator<S, V>> Evaluator<EmbeddedState<S, Mv>, V> for EmbeddedEval<E> {
    fn evaluate(&self, s: &EmbeddedState<S, Mv>) -> V {
        self.0.evaluate(&s.inner)
    }
}

/// A finite game tree with a value stored at every node.
///
/// Nodes at even depth belong to MAX. Leaves are terminal and their winner is
/// the sign of their value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitTree {
    pub children: Vec<Vec<usize>>,
    pub values: Vec<i64>,
    pub depth: Vec<u32>,
}

impl ExplicitTree {
    /// A tree with only a root; grow it with [`ExplicitTree::add_child`].
    pub fn with_root(value: i64) -> Self {
        ExplicitTree {
            children: vec![Vec::new()],
            values: vec![value],
            depth: vec![0],
        }
    }

    pub fn add_child(&mut self, parent: usize, value: i64) -> usize {
        let id = self.values.len();
        self.children.push(Vec::new());
        self.values.push(value);
        self.depth.push(self.depth[parent] + 1);
        self.children[parent].push(id);
        id
    }

    /// Random tree: every internal node has 1..=`max_branching` children, and
    /// branches stop at `max_depth` or earlier with probability 1/5 per level.
    pub fn random(seed: u64, max_branching: usize, max_depth: u32) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut tree = ExplicitTree::with_root(rng.gen_range(-20..=20));
        let mut frontier = vec![0usize];
        while let Some(n) = frontier.pop() {
            let d = tree.depth[n];
            if d >= max_depth || (d > 0 && rng.gen_bool(0.2)) {
                continue;
            }
            let k = rng.gen_range(1..=max_branching);
            for _ in 0..k {
                let v = rng.gen_range(-20..=20);
                frontier.push(tree.add_child(n, v));
            }
        }
        tree
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value_eval<V: Score>(&self) -> impl Fn(&usize) -> V + '_ {
        move |&n| score::from_i64(self.values[n])
    }
}

impl TurnBasedGame for ExplicitTree {
    type State = usize;
    type Move = usize;

    fn to_move(&self, s: &usize) -> Player {
        if self.depth[*s].is_multiple_of(2) {
            Player::Max
        } else {
            Player::Min
        }
    }

    fn moves(&self, s: &usize) -> Vec<usize> {
        (0..self.children[*s].len()).collect()
    }

    fn apply(&self, s: &usize, m: &usize) -> usize {
        self.children[*s][*m]
    }

    fn winner(&self, s: &usize) -> GameOutcome {
        if !self.children[*s].is_empty() {
            return GameOutcome::Ongoing;
        }
        match self.values[*s].signum() {
            1 => GameOutcome::MaxWins,
            -1 => GameOutcome::MinWins,
            _ => GameOutcome::Draw,
        }
    }
}

/// A game on a small directed graph; the state is (node, player to move).
/// Nodes without outgoing edges are terminal. Cycles are allowed.
#[derive(Clone, Debug)]
pub struct GraphGame {
    pub edges: Vec<Vec<usize>>,
    pub values: Vec<i64>,
}

impl GraphGame {
    pub fn random(seed: u64, nodes: usize, max_out: usize) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let edges = (0..nodes)
            .map(|_| {
                let k = rng.gen_range(0..=max_out);
                (0..k).map(|_| rng.gen_range(0..nodes)).collect()
            })
            .collect();
        let values = (0..nodes).map(|_| rng.gen_range(-9..=9)).collect();
        GraphGame { edges, values }
    }
}

impl TurnBasedGame for GraphGame {
    type State = (usize, Player);
    type Move = usize;

    fn to_move(&self, s: &(usize, Player)) -> Player {
        s.1
    }

    fn moves(&self, s: &(usize, Player)) -> Vec<usize> {
        (0..self.edges[s.0].len()).collect()
    }

    fn apply(&self, s: &(usize, Player), m: &usize) -> (usize, Player) {
        (self.edges[s.0][*m], s.1.opponent())
    }

    fn winner(&self, s: &(usize, Player)) -> GameOutcome {
        if self.edges[s.0].is_empty() {
            GameOutcome::Draw
        } else {
            GameOutcome::Ongoing
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::rtmm;

    /// Builds the whole depth-limited game tree breadth-first into an arena and
    /// folds it bottom-up.
    fn enumerate_value<G: TurnBasedGame>(
        game: &G,
        eval: impl Fn(&G::State) -> i64,
        root: G::State,
        depth: u32,
    ) -> i64 {
        struct Node<S> {
            state: S,
            player: Player,
            remaining: u32,
            kids: Vec<usize>,
        }
        let mut arena = vec![Node {
            player: game.to_move(&root),
            state: root,
            remaining: depth,
            kids: vec![],
        }];
        let mut i = 0;
        while i < arena.len() {
            if arena[i].remaining > 0 && !game.winner(&arena[i].state).is_over() {
                let p = arena[i].player;
                for m in game.legal_moves(&arena[i].state, p) {
                    let st = game.apply(&arena[i].state, &m);
                    let id = arena.len();
                    let remaining = arena[i].remaining - 1;
                    arena.push(Node {
                        state: st,
                        player: p.opponent(),
                        remaining,
                        kids: vec![],
                    });
                    arena[i].kids.push(id);
                }
            }
            i += 1;
        }
        let mut value = vec![0i64; arena.len()];
        for j in (0..arena.len()).rev() {
            let n = &arena[j];
            value[j] = if n.kids.is_empty() {
                eval(&n.state)
            } else if n.player == Player::Max {
                n.kids.iter().map(|&k| value[k]).max().unwrap()
            } else {
                n.kids.iter().map(|&k| value[k]).min().unwrap()
            };
        }
        value[0]
    }

    #[test]
    fn depth_zero_is_the_evaluation() {
        let t = ExplicitTree::random(3, 3, 4);
        let v: f64 = minimax(&t, &t.value_eval(), &0, 0, Player::Max);
        assert_eq!(v, t.values[0] as f64);
    }

    #[test]
    fn terminal_state_is_the_evaluation() {
        let mut t = ExplicitTree::with_root(0);
        let leaf = t.add_child(0, 7);
        let v: i64 = minimax(&t, &t.value_eval(), &leaf, 5, Player::Min);
        assert_eq!(v, 7);
    }

    #[test]
    fn five_state_graph_matches_enumeration() {
        for seed in 0..50 {
            let g = GraphGame::random(seed, 5, 3);
            for start in 0..5 {
                let root = (start, Player::Max);
                let expected = enumerate_value(&g, |s: &(usize, Player)| g.values[s.0], root, 3);
                let got: i64 = minimax(
                    &g,
                    &|s: &(usize, Player)| g.values[s.0],
                    &root,
                    3,
                    Player::Max,
                );
                assert_eq!(got, expected, "seed {seed} start {start}");
            }
        }
    }

    #[test]
    fn one_move_embedding_is_one_max_layer() {
        let mut t = ExplicitTree::with_root(0);
        t.add_child(0, 3);
        t.add_child(0, -2);
        let m = embed_turn_based(t.clone());
        let r = rtmm(
            &m,
            &EmbeddedEval(t.value_eval::<i64>()),
            &m.initial(0),
            GameClock(5),
        )
        .unwrap();
        assert_eq!(r.value, 3);
        assert_eq!(r.best_index, Some(0));
        assert_eq!(r.stats.leaves_total, 2);
        assert_eq!(r.stats.leaves_cutoff, 0);
        assert_eq!(r.stats.max_branching, 2);
    }

    #[test]
    fn depth_two_embedding_matches_minimax() {
        for seed in 0..20 {
            let t = ExplicitTree::random(seed, 3, 4);
            let m = embed_turn_based(t.clone());
            let eval = t.value_eval::<f64>();
            let want = minimax(&t, &eval, &0, 2, Player::Max);
            let got = rtmm(&m, &EmbeddedEval(&eval), &m.initial(0), GameClock(2)).unwrap();
            assert_eq!(got.value, want, "seed {seed}");
        }
    }

    #[test]
    fn embedded_layers_alternate() {
        let t = ExplicitTree::random(11, 3, 5);
        let m = embed_turn_based(t.clone());
        // Walk every path; the acting player must flip at every decision.
        let mut stack = vec![(m.initial(0), None::<Player>)];
        while let Some((s, last)) = stack.pop() {
            if m.winner(&s).is_over() {
                continue;
            }
            let ready: Vec<Player> = Player::BOTH
                .into_iter()
                .filter(|&p| m.can_act(&s, p))
                .collect();
            assert_eq!(ready.len(), 1);
            let p = ready[0];
            if let Some(prev) = last {
                assert_eq!(p, prev.opponent());
            }
            for a in m.player_actions(&s, p) {
                let next = m
                    .simulate(&m.issue(&s, &a, p).unwrap(), Until::Unbounded)
                    .unwrap();
                assert_eq!(next.clock, s.clock + 1);
                stack.push((next, Some(p)));
            }
        }
    }

    #[derive(Clone, Debug)]
    struct Stutter;

    impl TurnBasedGame for Stutter {
        type State = u8;
        type Move = ();
        fn to_move(&self, _: &u8) -> Player {
            Player::Max
        }
        fn moves(&self, _: &u8) -> Vec<()> {
            vec![()]
        }
        fn apply(&self, s: &u8, _: &()) -> u8 {
            s + 1
        }
        fn winner(&self, s: &u8) -> GameOutcome {
            if *s > 3 {
                GameOutcome::Draw
            } else {
                GameOutcome::Ongoing
            }
        }
    }

    #[test]
    fn non_alternating_game_is_a_contract_error() {
        let m = embed_turn_based(Stutter);
        let s = m.initial(0);
        let a = m.player_actions(&s, Player::Max).remove(0);
        let issued = m.issue(&s, &a, Player::Max).unwrap();
        assert!(matches!(
            m.simulate(&issued, Until::Unbounded),
            Err(ModelError::ContractViolation(_))
        ));
    }
}
