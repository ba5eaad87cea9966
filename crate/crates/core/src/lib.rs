pub mod builders;
pub mod chains;
pub mod cobar;
pub mod cube;
pub mod error;
pub mod homology;
pub mod path;
pub mod random;
pub mod relations;
pub mod simplicial;
pub mod snf;
pub mod suites;
pub mod word;

pub use error::{Error, Result};
pub use simplicial::{
    DegeneracyWord, GenId, Generator, PresentationBuilder, SimplexTerm, SimplicialPresentation,
};
