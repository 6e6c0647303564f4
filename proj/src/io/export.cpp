#include "yoshimura/io/export.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "yoshimura/errors.hpp"

namespace yoshimura::io {

namespace {

// Fixed significant digits and no negative zero, so exports diff cleanly.
std::string num(double v) {
    if (v == 0.0) v = 0.0;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    std::string s(buf);
    return s == "-0" ? "0" : s;
}

}  // namespace

void write_frames_csv(std::ostream& out, const FrameChain& chain, double L) {
    out << "module,r00,r01,r02,tx,r10,r11,r12,ty,r20,r21,r22,tz\n";
    for (std::size_t j = 0; j < chain.frames.size(); ++j) {
        const Mat4& m = chain.frames[j].matrix();
        out << j;
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 4; ++c) out << ',' << num(c == 3 ? m(r, c) * L : m(r, c));
        }
        out << '\n';
    }
}

void write_obj(std::ostream& out, const std::vector<ModuleMesh>& meshes, double L) {
    out << "# yoshimura boom, " << meshes.size() << " modules\n";
    std::size_t offset = 1;
    for (std::size_t j = 0; j < meshes.size(); ++j) {
        const ModuleMesh& mesh = meshes[j];
        out << "o module_" << j << '\n';
        for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
            const Vec3 p = mesh.vertices[v] * L;
            out << "v " << num(p.x()) << ' ' << num(p.y()) << ' ' << num(p.z()) << '\n';
        }
        for (const auto& f : mesh.facets) {
            out << "f " << offset + static_cast<std::size_t>(f[0]) << ' '
                << offset + static_cast<std::size_t>(f[1]) << ' '
                << offset + static_cast<std::size_t>(f[2]) << '\n';
        }
        offset += mesh.vertices.size();
    }
}

std::vector<ObjObject> read_obj(std::istream& in) {
    std::vector<ObjObject> objects;
    std::vector<Vec3> all;
    std::vector<std::size_t> first_vertex;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag[0] == '#') continue;
        if (tag == "o") {
            objects.push_back({});
            ls >> objects.back().name;
            first_vertex.push_back(all.size());
        } else if (tag == "v") {
            Vec3 p;
            if (!(ls >> p.x() >> p.y() >> p.z())) throw ParseError("bad vertex", line_no, 1);
            all.push_back(p);
            if (objects.empty()) throw ParseError("vertex outside an object", line_no, 1);
            objects.back().vertices.push_back(p);
        } else if (tag == "f") {
            if (objects.empty()) throw ParseError("face outside an object", line_no, 1);
            std::array<int, 3> face{};
            for (int& idx : face) {
                long global = 0;
                if (!(ls >> global)) throw ParseError("bad face", line_no, 1);
                idx = static_cast<int>(global - 1 - static_cast<long>(first_vertex.back()));
                if (idx < 0 || idx >= static_cast<int>(objects.back().vertices.size())) {
                    throw ParseError("face index outside its object", line_no, 1);
                }
            }
            objects.back().faces.push_back(face);
        }
    }
    return objects;
}

void write_workspace_csv(std::ostream& out, const Workspace& ws, double L) {
    out << "x,y,z,multiplicity,words\n";
    for (const WorkspacePoint& p : ws.points) {
        const Vec3 q = p.position * L;
        out << num(q.x()) << ',' << num(q.y()) << ',' << num(q.z()) << ',' << p.words.size() << ',';
        for (std::size_t i = 0; i < p.words.size(); ++i) out << (i ? ";" : "") << p.words[i];
        out << '\n';
    }
}

}  // namespace yoshimura::io
