void cwe415_bug_inside_helper_c_done(char *b) {
  free(b);
  free(b);
}

int cwe415_bug_inside_helper_c_main(int c) {
  char *p = calloc(4, 4);
  cwe415_bug_inside_helper_c_done(p);
  return 0;
}
