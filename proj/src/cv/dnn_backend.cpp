#include "centerface/dnn_backend.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

#include <opencv2/dnn.hpp>

namespace centerface {

namespace {

// Expects an NCHW tensor with batch 1; copies the float data out.
void tensor_dims(const cv::Mat& m, const std::string& head, int& ch, int& h, int& w) {
    if (m.dims != 4 || m.size[0] != 1 || m.type() != CV_32F)
        throw std::runtime_error("head '" + head + "': expected a 1xCxHxW float tensor");
    ch = m.size[1];
    h = m.size[2];
    w = m.size[3];
}

Grid2D plane_from(const cv::Mat& m, const std::string& head) {
    int ch, h, w;
    tensor_dims(m, head, ch, h, w);
    if (ch != 1) throw std::runtime_error("head '" + head + "': expected 1 channel");
    Grid2D out(h, w);
    std::memcpy(out.data.data(), m.ptr<float>(), out.size() * sizeof(float));
    return out;
}

Grid3D volume_from(const cv::Mat& m, const std::string& head) {
    int ch, h, w;
    tensor_dims(m, head, ch, h, w);
    Grid3D out(ch, h, w);
    std::memcpy(out.data.data(), m.ptr<float>(), out.size() * sizeof(float));
    return out;
}

class DnnBackend final : public Backend {
public:
    DnnBackend(const std::string& model_path, const BackendSpec& spec)
        : model_path_(model_path), spec_(spec) {
        net_ = cv::dnn::readNetFromONNX(model_path);
        if (net_.empty()) throw std::runtime_error("cannot load model: " + model_path);
    }

    OutputHeads run(const PreprocessResult& input) override {
        const int sz[4] = {1, 3, input.input_h, input.input_w};
        cv::Mat blob(4, sz, CV_32F);
        std::memcpy(blob.ptr<float>(), input.tensor.data.data(),
                    input.tensor.size() * sizeof(float));

        net_.setInput(blob);
        std::vector<cv::Mat> outs;
        const std::vector<cv::String> names = {spec_.heads.heatmap, spec_.heads.scale,
                                               spec_.heads.offset, spec_.heads.landmarks};
        net_.forward(outs, names);

        OutputHeads heads;
        heads.stride = kStride;
        heads.heatmap = plane_from(outs[0], spec_.heads.heatmap);
        heads.size = volume_from(outs[1], spec_.heads.scale);
        heads.offset = volume_from(outs[2], spec_.heads.offset);
        heads.landmarks = volume_from(outs[3], spec_.heads.landmarks);

        if (spec_.heatmap_is_logits)
            for (float& v : heads.heatmap.data) v = 1.0f / (1.0f + std::exp(-v));

        validate_heads(heads, input.input_w, input.input_h);
        return heads;
    }

    std::unique_ptr<Backend> clone() const override {
        return std::make_unique<DnnBackend>(model_path_, spec_);
    }

private:
    std::string model_path_;
    BackendSpec spec_;
    cv::dnn::Net net_;
};

}  // namespace

std::unique_ptr<Backend> dnn_backend(const std::string& model_path, const BackendSpec& spec) {
    return std::make_unique<DnnBackend>(model_path, spec);
}

}  // namespace centerface
