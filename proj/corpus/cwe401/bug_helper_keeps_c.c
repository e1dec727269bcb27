void cwe401_bug_helper_keeps_c_fill(char *b) {
  b[0] = 1;
}

int cwe401_bug_helper_keeps_c_main(int c) {
  char *p = calloc(4, 4);
  cwe401_bug_helper_keeps_c_fill(p);
  return 0;
}
