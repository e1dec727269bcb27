int cwe416_bug_else_arm_read_c_main(int c) {
  int x = 0;
  char *p = calloc(4, 4);
  free(p);
  if (c) {
    x = 1;
  } else {
    x = *p;
  }
  return x;
}
