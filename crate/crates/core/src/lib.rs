pub mod cli;
pub mod format;
pub mod freelie;
pub mod groups;
pub mod liealg;
pub mod linear;
pub mod pbw;
pub mod snf;
pub mod unigroup;
