#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "yoshimura/boom.hpp"
#include "yoshimura/config_space.hpp"

namespace yoshimura::io {

/// One row per interface frame, row 0 being the base: module index followed
/// by the top three rows of the 4x4 transform.  Translations in units of L.
void write_frames_csv(std::ostream& out, const FrameChain& chain, double L);

/// Wavefront OBJ with one object per module.
void write_obj(std::ostream& out, const std::vector<ModuleMesh>& meshes, double L);

struct ObjObject {
    std::string name;
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> faces;  ///< 0-based, local to the object
};

/// Reads the subset of OBJ written by write_obj.
std::vector<ObjObject> read_obj(std::istream& in);

/// x, y, z, multiplicity and the ';'-joined words of every unique endpoint.
void write_workspace_csv(std::ostream& out, const Workspace& ws, double L);

}  // namespace yoshimura::io
