pub mod dyadic;
pub mod interval;
pub mod polyz;
pub mod magnitude;
pub mod roots;
pub mod algnum;
pub mod heights;
pub mod certify;
pub mod lemmas;
pub mod cli;
