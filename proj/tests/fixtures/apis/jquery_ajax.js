function submit(form) {
  JQuery.ajax("verify.py");
}

submit(document.forms[0]);
