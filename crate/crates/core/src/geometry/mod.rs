//! Frames, Grassmannian points, projections, the angle matrix `Cos²`, the
//! unitaries `j(a)`, `h(a)` and the frame decompositions built on them.

pub mod frames;
pub mod special;

pub use frames::{
    complete_to_unitary, cos2, projection, x0, xhat0, GrassmannPoint, Placement, StiefelFrame, FRAME_TOL, POINT_TOL,
};
pub use special::{bi_stiefel_decompose, decompose_j_frame, h_mat, h_on_xhat0, j_inverse_y0, j_mat, BiStiefel};
