#include "vortexdyn/run_record.hpp"

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace vdyn {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(item);
    return out;
}

}  // namespace

std::string RunRecord::to_csv() const {
    std::ostringstream out;
    out << "t,i,Yx,Yy,Xx,Xy,dXx,dXy,dYx,dYy,W2,maxF,W1,H,c5_pair,c5_bnd,c12_pair,c12_bnd";
    for (int m = 1; m <= M; ++m) out << ",c_" << m;
    out << "\n";
    for (const Frame& f : frames) {
        for (int i = 0; i < N; ++i) {
            const FrameVortex& v = f.vortices[std::size_t(i)];
            out << fmt(f.t) << ',' << i << ',' << fmt(v.Y.x) << ',' << fmt(v.Y.y) << ','
                << fmt(v.X.x) << ',' << fmt(v.X.y) << ',' << fmt(v.dX.x) << ',' << fmt(v.dX.y)
                << ',' << fmt(v.dY.x) << ',' << fmt(v.dY.y) << ',' << fmt(v.W2) << ','
                << fmt(v.maxF) << ',' << fmt(f.W1) << ',' << fmt(f.H) << ','
                << fmt(f.c5.min_pair) << ',' << fmt(f.c5.min_boundary) << ','
                << fmt(f.c12.min_pair) << ',' << fmt(f.c12.min_boundary);
            for (double c : f.hole_coeffs) out << ',' << fmt(c);
            out << "\n";
        }
    }
    return out.str();
}

std::string RunRecord::manifest_json() const {
    nlohmann::json j;
    j["schema"] = 1;
    j["scenario"] = scenario_name;
    j["N"] = N;
    j["M"] = M;
    j["strengths"] = strengths;
    j["lp_proxy"] = lp_proxy;
    j["linf_proxy"] = linf_proxy;
    j["frames"] = frames.size();
    j["stopping_reason"] = stopping_reason;
    j["stop_time"] = stop_time;
    j["wall_time_s"] = wall_time;
    char hash[24];
    std::snprintf(hash, sizeof(hash), "%016" PRIx64, config_hash);
    j["config_hash"] = hash;
    j["csv"] = "frames.csv";
    return j.dump(2);
}

void save_run(const RunRecord& record, const std::string& dir) {
    std::filesystem::create_directories(dir);
    {
        std::ofstream csv(dir + "/frames.csv", std::ios::binary);
        csv << record.to_csv();
    }
    {
        std::ofstream manifest(dir + "/manifest.json", std::ios::binary);
        manifest << record.manifest_json() << "\n";
    }
}

RunRecord load_run(const std::string& dir) {
    RunRecord rec;
    {
        std::ifstream in(dir + "/manifest.json");
        if (!in) throw std::runtime_error("load_run: missing manifest in " + dir);
        nlohmann::json j;
        in >> j;
        rec.scenario_name = j.at("scenario").get<std::string>();
        rec.N = j.at("N").get<int>();
        rec.M = j.at("M").get<int>();
        rec.strengths = j.at("strengths").get<std::vector<double>>();
        rec.lp_proxy = j.at("lp_proxy").get<std::vector<double>>();
        rec.linf_proxy = j.at("linf_proxy").get<std::vector<double>>();
        rec.stopping_reason = j.at("stopping_reason").get<std::string>();
        rec.stop_time = j.at("stop_time").get<double>();
        rec.wall_time = j.at("wall_time_s").get<double>();
        rec.config_hash = std::stoull(j.at("config_hash").get<std::string>(), nullptr, 16);
    }

    std::ifstream csv(dir + "/frames.csv");
    if (!csv) throw std::runtime_error("load_run: missing frames.csv in " + dir);
    std::string line;
    std::getline(csv, line);  // header
    Frame frame;
    bool has_frame = false;
    while (std::getline(csv, line)) {
        if (line.empty()) continue;
        const auto cells = split_csv_line(line);
        const std::size_t expected = 18 + std::size_t(rec.M);
        if (cells.size() != expected)
            throw std::runtime_error("load_run: malformed CSV row: " + line);
        const double t = std::strtod(cells[0].c_str(), nullptr);
        const int i = int(std::strtol(cells[1].c_str(), nullptr, 10));
        if (i == 0) {
            if (has_frame) rec.frames.push_back(frame);
            frame = Frame{};
            frame.t = t;
            frame.vortices.assign(std::size_t(rec.N), FrameVortex{});
            has_frame = true;
        }
        FrameVortex& v = frame.vortices.at(std::size_t(i));
        const auto num = [&](int c) { return std::strtod(cells[std::size_t(c)].c_str(), nullptr); };
        v.Y = {num(2), num(3)};
        v.X = {num(4), num(5)};
        v.dX = {num(6), num(7)};
        v.dY = {num(8), num(9)};
        v.W2 = num(10);
        v.maxF = num(11);
        frame.W1 = num(12);
        frame.H = num(13);
        frame.c5.min_pair = num(14);
        frame.c5.min_boundary = num(15);
        frame.c12.min_pair = num(16);
        frame.c12.min_boundary = num(17);
        frame.hole_coeffs.clear();
        for (int m = 0; m < rec.M; ++m) frame.hole_coeffs.push_back(num(18 + m));
    }
    if (has_frame) rec.frames.push_back(frame);
    return rec;
}

}  // namespace vdyn
