use thiserror::Error;

use crate::assembler::AssemblyError;
use crate::character::CharacterError;
use crate::realization::RealizationError;
use crate::root_data::RootDataError;
use crate::tate::MotiveError;
use crate::weyl::WeylError;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    RootData(#[from] RootDataError),
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error(transparent)]
    Motive(#[from] MotiveError),
    #[error(transparent)]
    Assembly(#[from] AssemblyError),
    #[error(transparent)]
    Character(#[from] CharacterError),
    #[error(transparent)]
    Realization(#[from] RealizationError),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    VerificationFailed(String),
}

impl Error {
    pub fn name(&self) -> &'static str {
        match self {
            Error::RootData(e) => e.name(),
            Error::Weyl(e) => e.name(),
            Error::Motive(e) => e.name(),
            Error::Assembly(e) => e.name(),
            Error::Character(e) => e.name(),
            Error::Realization(e) => e.name(),
            Error::Input(_) => "InputError",
            Error::VerificationFailed(_) => "VerificationFailed",
        }
    }

    /// 2 when an internal cross-check disagreed, 1 for rejected input.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::VerificationFailed(_) | Error::Realization(RealizationError::SeriesMismatch { .. }) => 2,
            _ => 1,
        }
    }
}
