int cwe401_bug_alias_unfreed_c_main(int c) {
  char *p = calloc(4, 4);
  char *q = p;
  q[0] = 1;
  return 0;
}
