//! From cubical to categorical cocycles and back.

mod classes;
mod cochain;
mod shuffle;

pub use classes::{cub_class_equal, restrict_to_squares, ClassVerdict};
pub(crate) use cochain::same_graph;
pub use cochain::{
    build_cocycle, c_phi, cat2_check_default, cat2_eval_and_check, is_normalised, Cat1Cochain, Cat1Kind, Cat2Cocycle,
    CocycleKind, CocycleRecipe,
};
pub use shuffle::{preferred_word, shuffle, shuffle_with, ColouredWord, ShuffleOutcome, SquareValues, Strategy, TransitionMove};
