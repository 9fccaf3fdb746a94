#pragma once

#include <memory>
#include <string>

#include "centerface/backend.hpp"

namespace centerface {

// Backend over an exchange-format (.onnx) model file, run through the OpenCV
// dnn module. Head tensors are looked up by spec.heads names; shapes are
// validated on every run.
std::unique_ptr<Backend> dnn_backend(const std::string& model_path, const BackendSpec& spec);

}  // namespace centerface
