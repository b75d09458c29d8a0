use crate::dataword::Position;

/// System's side of the game: a function of the history alone.
/// `None` stands for ε.
pub trait SystemStrategy: Send + Sync {
    fn next_move(&self, history: &[Position]) -> Option<Position>;
}

impl<F> SystemStrategy for F
where
    F: Fn(&[Position]) -> Option<Position> + Send + Sync,
{
    fn next_move(&self, history: &[Position]) -> Option<Position> {
        self(history)
    }
}

/// Environment's side of the game, also a function of the history.
pub trait EnvironmentPolicy: Send + Sync {
    fn name(&self) -> String;
    fn next_move(&self, history: &[Position]) -> Option<Position>;
}
