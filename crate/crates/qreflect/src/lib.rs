//! Exact matrix-product solutions of the Yang–Baxter and reflection equations.

pub mod goldens;
pub mod matprod;
pub mod qboson;
pub mod scalar;
pub mod threedim;
pub mod uqrep;
pub mod verify;

#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/scalars.md")]
    pub mod scalars {}
    #[doc = include_str!("../../../book/src/qboson.md")]
    pub mod qboson {}
    #[doc = include_str!("../../../book/src/three_dim.md")]
    pub mod three_dim {}
    #[doc = include_str!("../../../book/src/matrices.md")]
    pub mod matrices {}
    #[doc = include_str!("../../../book/src/verification.md")]
    pub mod verification {}
    #[doc = include_str!("../../../book/src/quantum_groups.md")]
    pub mod quantum_groups {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
    #[doc = include_str!("../../../book/src/formats.md")]
    pub mod formats {}
}
