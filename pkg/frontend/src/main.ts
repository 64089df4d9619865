import { Api } from "./api.js";
import { el } from "./dom.js";
import { renderApp } from "./app.js";

const root = document.getElementById("app");
if (root) {
  const api = new Api("", sessionStorage.getItem("caselens_token"));
  const login = el("div", { class: "login-row" });
  const tokenInput = el("input", {
    type: "password",
    placeholder: "auth token (leave empty if auth is off)",
    value: sessionStorage.getItem("caselens_token") ?? "",
  });
  const apply = el("button", { text: "Set token" });
  apply.addEventListener("click", () => {
    const token = tokenInput.value.trim();
    if (token) sessionStorage.setItem("caselens_token", token);
    else sessionStorage.removeItem("caselens_token");
    api.setToken(token || null);
    void renderApp(root, api);
  });
  login.append(tokenInput, apply);
  document.body.prepend(login);
  void renderApp(root, api);
}
